#include "cslab/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "cslab/fourier.hpp"

namespace cslab {
namespace {

constexpr double kRankTolerance = 1e-10;

std::optional<Eigen::VectorXd> solve_least_squares(const Eigen::MatrixXd& a,
                                                   const Eigen::VectorXd& y) {
  if (a.cols() == 0) return Eigen::VectorXd();
  if (a.cols() > a.rows()) return std::nullopt;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(kRankTolerance);
  if (qr.rank() < a.cols()) return std::nullopt;
  Eigen::VectorXd sol = qr.solve(y);
  if (!sol.allFinite()) return std::nullopt;
  return sol;
}

Eigen::VectorXd scatter(std::size_t dim, const Support& support, const Eigen::VectorXd& values) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t j = 0; j < support.size(); ++j) {
    out[static_cast<Eigen::Index>(support[j])] = values[static_cast<Eigen::Index>(j)];
  }
  return out;
}

// Indices of the k largest |v| entries, returned sorted by index. Ties go to
// the lower index so the choice is deterministic.
Support largest(const Eigen::VectorXd& v, std::size_t k) {
  std::vector<std::size_t> order(static_cast<std::size_t>(v.size()));
  std::iota(order.begin(), order.end(), 0);
  k = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&v](std::size_t a, std::size_t b) {
                      const double fa = std::abs(v[static_cast<Eigen::Index>(a)]);
                      const double fb = std::abs(v[static_cast<Eigen::Index>(b)]);
                      return fa > fb || (fa == fb && a < b);
                    });
  order.resize(k);
  std::sort(order.begin(), order.end());
  return order;
}

// Column access with memoization; structured ensembles pay a transform per
// column, and CoSaMP revisits most columns across passes.
class ColumnCache {
 public:
  explicit ColumnCache(const MeasurementEnsemble& ensemble) : ensemble_(ensemble) {}

  Eigen::MatrixXd gather(const Support& support) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(ensemble_.rows()),
                        static_cast<Eigen::Index>(support.size()));
    for (std::size_t j = 0; j < support.size(); ++j) {
      auto it = cache_.find(support[j]);
      if (it == cache_.end()) {
        it = cache_.emplace(support[j], ensemble_.columns({support[j]}).col(0)).first;
      }
      out.col(static_cast<Eigen::Index>(j)) = it->second;
    }
    return out;
  }

 private:
  const MeasurementEnsemble& ensemble_;
  std::unordered_map<std::size_t, Eigen::VectorXd> cache_;
};

double basis_amplitude(fourier::BinKind kind, std::size_t dim) {
  const double n = static_cast<double>(dim);
  if (kind == fourier::BinKind::cosine || kind == fourier::BinKind::sine) return std::sqrt(2.0 / n);
  return 1.0 / std::sqrt(n);
}

}  // namespace

RecoveryOutput oracle_recover(const MeasurementEnsemble& ensemble, const Eigen::VectorXd& y,
                              const Support& support) {
  if (static_cast<std::size_t>(y.size()) != ensemble.rows()) {
    throw std::invalid_argument("oracle_recover: measurement length does not match ensemble");
  }
  if (!std::is_sorted(support.begin(), support.end()) ||
      std::adjacent_find(support.begin(), support.end()) != support.end()) {
    throw std::invalid_argument("oracle_recover: support must be sorted and unique");
  }
  const auto sol = solve_least_squares(ensemble.columns(support), y);
  if (!sol) throw RankDeficientError("oracle_recover: restricted matrix is rank deficient");
  return {scatter(ensemble.cols(), support, *sol), support, 0, true, {}};
}

RecoveryOutput cosamp(const MeasurementEnsemble& ensemble, const Eigen::VectorXd& y,
                      std::size_t sparsity, const CosampOptions& options) {
  if (static_cast<std::size_t>(y.size()) != ensemble.rows()) {
    throw std::invalid_argument("cosamp: measurement length does not match ensemble");
  }
  if (sparsity == 0 || sparsity > ensemble.cols()) {
    throw std::invalid_argument("cosamp: sparsity must be in [1, B]");
  }
  if (options.max_iter == 0) throw std::invalid_argument("cosamp: max_iter must be >= 1");

  const std::size_t dim = ensemble.cols();
  RecoveryOutput out{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim)), {}, 0, false, {}};
  double res_norm = y.norm();
  if (res_norm == 0.0) {
    out.iterations = 1;
    out.converged = true;
    return out;
  }

  ColumnCache cache(ensemble);
  Eigen::VectorXd residual = y;
  out.residual_norms.push_back(res_norm);
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    out.iterations = it;
    const Support proxy_top = largest(ensemble.apply_transpose(residual), 2 * sparsity);
    Support candidates;
    std::set_union(proxy_top.begin(), proxy_top.end(), out.support_hat.begin(),
                   out.support_hat.end(), std::back_inserter(candidates));

    const auto sol = solve_least_squares(cache.gather(candidates), y);
    if (!sol) break;

    const Support kept = largest(scatter(dim, candidates, *sol), sparsity);
    const Eigen::MatrixXd kept_cols = cache.gather(kept);
    const Eigen::VectorXd kept_vals = restrict_to(scatter(dim, candidates, *sol), kept);
    const Eigen::VectorXd next_residual = y - kept_cols * kept_vals;
    const double next_norm = next_residual.norm();

    if (next_norm > res_norm) break;

    out.coeffs_hat = scatter(dim, kept, kept_vals);
    out.support_hat = kept;
    residual = next_residual;
    out.residual_norms.push_back(next_norm);
    const double change = std::abs(res_norm - next_norm) / res_norm;
    res_norm = next_norm;
    if (change < options.tol || res_norm <= 1e-14 * y.norm()) {
      out.converged = true;
      break;
    }
  }
  // Final least squares on the chosen support, so a correct support gives
  // exactly the oracle estimate.
  if (const auto sol = solve_least_squares(cache.gather(out.support_hat), y)) {
    out.coeffs_hat = scatter(dim, out.support_hat, *sol);
  }
  return out;
}

RecoveryOutput bandpass_baseline(const SampleVector& x, std::size_t rho, const Support& support) {
  const auto dim = static_cast<std::size_t>(x.samples.size());
  if (rho == 0 || dim == 0 || dim % rho != 0) {
    throw std::invalid_argument("bandpass_baseline: rho must divide B (B=" + std::to_string(dim) +
                                ", rho=" + std::to_string(rho) + ")");
  }
  const std::size_t m = dim / rho;
  Eigen::VectorXd kept(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    kept[static_cast<Eigen::Index>(i)] = x.samples[static_cast<Eigen::Index>(i * rho)];
  }
  const Eigen::VectorXd folded = fourier::analyze(kept);

  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  std::vector<std::size_t> targets;
  targets.reserve(support.size());
  for (const std::size_t k : support) {
    if (k >= dim) throw std::invalid_argument("bandpass_baseline: support index out of range");
    const fourier::BinInfo src = fourier::bin_info(dim, k);
    std::size_t f = src.frequency % m;
    double sign = 1.0;
    if (2 * f > m) {
      f = m - f;
      if (src.kind == fourier::BinKind::sine) sign = -1.0;
    }
    fourier::BinKind kind;
    if (f == 0) {
      kind = fourier::BinKind::dc;
    } else if (2 * f == m) {
      kind = fourier::BinKind::nyquist;
    } else {
      kind = src.kind == fourier::BinKind::sine ? fourier::BinKind::sine : fourier::BinKind::cosine;
    }
    if (src.kind == fourier::BinKind::sine && kind != fourier::BinKind::sine) {
      throw AliasCollisionError("bandpass_baseline: sine bin " + std::to_string(k) +
                                " folds onto a bin without a sine term");
    }
    const std::size_t target = fourier::bin_index(m, kind, f);
    if (std::find(targets.begin(), targets.end(), target) != targets.end()) {
      throw AliasCollisionError("bandpass_baseline: support bins alias onto bin " +
                                std::to_string(target));
    }
    targets.push_back(target);
    const double gain = basis_amplitude(kind, m) / basis_amplitude(src.kind, dim);
    coeffs[static_cast<Eigen::Index>(k)] = sign * gain * folded[static_cast<Eigen::Index>(target)];
  }
  return {std::move(coeffs), support, 0, true, {}};
}

}  // namespace cslab
