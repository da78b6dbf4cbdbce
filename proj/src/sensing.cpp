#include "cslab/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "cslab/fourier.hpp"
#include "cslab/parallel.hpp"
#include "cslab/seeding.hpp"

namespace cslab {
namespace {

void check_shape(std::size_t rows, std::size_t cols) {
  if (rows == 0 || rows > cols) {
    throw std::invalid_argument("measurement ensemble requires 1 <= M <= B (got M=" +
                                std::to_string(rows) + ", B=" + std::to_string(cols) + ")");
  }
}

Eigen::VectorXd random_signs(std::size_t n, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  Eigen::VectorXd s(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < s.size(); ++i) s[i] = coin(rng) ? 1.0 : -1.0;
  return s;
}

// delta contribution of one support from the eigenvalues of R_L^T R_L.
double support_delta(const Eigen::MatrixXd& gram) {
  if (gram.rows() == 1) return std::abs(gram(0, 0) - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  return std::max(1.0 - ev.minCoeff(), ev.maxCoeff() - 1.0);
}

struct Best {
  double delta = -1.0;
  Support support;

  void offer(double d, const Support& s) {
    if (d > delta || (d == delta && s < support)) {
      delta = d;
      support = s;
    }
  }
};

bool next_combination(Support& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::gaussian: return "gaussian";
    case Distribution::rademacher: return "rademacher";
    case Distribution::randomized_orthogonal: return "randomized_orthogonal";
  }
  return "unknown";
}

Distribution distribution_from_string(std::string_view name) {
  if (name == "gaussian") return Distribution::gaussian;
  if (name == "rademacher") return Distribution::rademacher;
  if (name == "randomized_orthogonal") return Distribution::randomized_orthogonal;
  throw std::invalid_argument("unknown distribution '" + std::string(name) + "'");
}

MeasurementEnsemble::MeasurementEnsemble(Eigen::MatrixXd matrix, Distribution distribution,
                                         bool row_orthogonalized)
    : rows_(static_cast<std::size_t>(matrix.rows())),
      cols_(static_cast<std::size_t>(matrix.cols())),
      distribution_(distribution),
      row_orthogonalized_(row_orthogonalized),
      rep_(std::move(matrix)) {
  check_shape(rows_, cols_);
}

MeasurementEnsemble::MeasurementEnsemble(Structured s, std::size_t rows, std::size_t cols)
    : rows_(rows),
      cols_(cols),
      distribution_(Distribution::randomized_orthogonal),
      row_orthogonalized_(true),
      rep_(std::move(s)) {}

double MeasurementEnsemble::row_norm_target() const { return std::sqrt(subsampling()); }

Eigen::VectorXd MeasurementEnsemble::apply(const Eigen::VectorXd& v) const {
  if (static_cast<std::size_t>(v.size()) != cols_) {
    throw std::invalid_argument("apply: vector length does not match ensemble columns");
  }
  if (const auto* m = std::get_if<Eigen::MatrixXd>(&rep_)) return *m * v;
  const auto& s = std::get<Structured>(rep_);
  const Eigen::VectorXd inner = fourier::synthesize(s.inner_signs.cwiseProduct(v));
  const Eigen::VectorXd outer = fourier::synthesize(s.outer_signs.cwiseProduct(inner));
  const double gain = std::sqrt(subsampling());
  Eigen::VectorXd y(static_cast<Eigen::Index>(rows_));
  for (std::size_t i = 0; i < rows_; ++i) {
    y[static_cast<Eigen::Index>(i)] = gain * outer[static_cast<Eigen::Index>(s.selected[i])];
  }
  return y;
}

Eigen::VectorXd MeasurementEnsemble::apply_transpose(const Eigen::VectorXd& r) const {
  if (static_cast<std::size_t>(r.size()) != rows_) {
    throw std::invalid_argument("apply_transpose: vector length does not match ensemble rows");
  }
  if (const auto* m = std::get_if<Eigen::MatrixXd>(&rep_)) return m->transpose() * r;
  const auto& s = std::get<Structured>(rep_);
  Eigen::VectorXd scattered = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i) {
    scattered[static_cast<Eigen::Index>(s.selected[i])] = r[static_cast<Eigen::Index>(i)];
  }
  const Eigen::VectorXd outer = s.outer_signs.cwiseProduct(fourier::analyze(scattered));
  return std::sqrt(subsampling()) * s.inner_signs.cwiseProduct(fourier::analyze(outer));
}

Eigen::MatrixXd MeasurementEnsemble::columns(const Support& support) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(support.size()));
  if (const auto* m = std::get_if<Eigen::MatrixXd>(&rep_)) {
    for (std::size_t j = 0; j < support.size(); ++j) {
      if (support[j] >= cols_) throw std::out_of_range("columns: index outside ensemble");
      out.col(static_cast<Eigen::Index>(j)) = m->col(static_cast<Eigen::Index>(support[j]));
    }
    return out;
  }
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cols_));
  for (std::size_t j = 0; j < support.size(); ++j) {
    if (support[j] >= cols_) throw std::out_of_range("columns: index outside ensemble");
    unit[static_cast<Eigen::Index>(support[j])] = 1.0;
    out.col(static_cast<Eigen::Index>(j)) = apply(unit);
    unit[static_cast<Eigen::Index>(support[j])] = 0.0;
  }
  return out;
}

Eigen::MatrixXd MeasurementEnsemble::dense() const {
  if (const auto* m = std::get_if<Eigen::MatrixXd>(&rep_)) return *m;
  Support all(cols_);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return columns(all);
}

const Eigen::MatrixXd& MeasurementEnsemble::matrix() const {
  if (const auto* m = std::get_if<Eigen::MatrixXd>(&rep_)) return *m;
  throw std::logic_error("matrix(): ensemble is not stored densely");
}

MeasurementEnsemble generate_ensemble(std::size_t rows, std::size_t cols, Distribution distribution,
                                      std::uint64_t seed) {
  check_shape(rows, cols);
  Rng rng(seed);
  const auto m = static_cast<Eigen::Index>(rows);
  const auto b = static_cast<Eigen::Index>(cols);
  const double scale = 1.0 / std::sqrt(static_cast<double>(rows));

  switch (distribution) {
    case Distribution::gaussian: {
      std::normal_distribution<double> normal(0.0, scale);
      Eigen::MatrixXd r(m, b);
      // Row-major fill order keeps the draw sequence independent of storage.
      for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < b; ++j) r(i, j) = normal(rng);
      return {std::move(r), distribution, false};
    }
    case Distribution::rademacher: {
      std::bernoulli_distribution coin(0.5);
      Eigen::MatrixXd r(m, b);
      for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < b; ++j) r(i, j) = coin(rng) ? scale : -scale;
      return {std::move(r), distribution, false};
    }
    case Distribution::randomized_orthogonal: {
      MeasurementEnsemble::Structured s;
      s.inner_signs = random_signs(cols, rng);
      s.outer_signs = random_signs(cols, rng);
      std::vector<std::size_t> all(cols);
      std::iota(all.begin(), all.end(), std::size_t{0});
      std::shuffle(all.begin(), all.end(), rng);
      s.selected.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(rows));
      std::sort(s.selected.begin(), s.selected.end());
      return {std::move(s), rows, cols};
    }
  }
  throw std::invalid_argument("generate_ensemble: unknown distribution");
}

MeasurementEnsemble orthogonalize_rows(const MeasurementEnsemble& ensemble) {
  if (!ensemble.is_dense()) return ensemble;
  const Eigen::MatrixXd& r = ensemble.matrix();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double s_max = s.maxCoeff();
  if (!(s_max > 0.0) || s.minCoeff() <= 1e-10 * s_max) {
    throw RankDeficientError("orthogonalize_rows: matrix does not have full row rank");
  }
  Eigen::MatrixXd out = std::sqrt(ensemble.subsampling()) * svd.matrixV().transpose();
  return {std::move(out), ensemble.distribution(), true};
}

Eigen::VectorXd measure(const MeasurementEnsemble& ensemble, const Eigen::VectorXd& coeffs,
                        double noise_var, std::uint64_t seed) {
  if (!(noise_var >= 0.0)) throw std::invalid_argument("measure: noise variance must be >= 0");
  Eigen::VectorXd y = ensemble.apply(coeffs);
  if (noise_var == 0.0) return y;
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(noise_var));
  for (Eigen::Index i = 0; i < y.size(); ++i) y[i] += normal(rng);
  return y;
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c *= static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(c);
}

RipEstimate estimate_rip_constant(const MeasurementEnsemble& ensemble, std::size_t sparsity,
                                  RipMode mode, std::uint64_t seed, unsigned workers) {
  const std::size_t b = ensemble.cols();
  if (sparsity == 0) throw std::invalid_argument("estimate_rip_constant: sparsity must be >= 1");
  if (sparsity > ensemble.rows()) {
    throw std::invalid_argument("estimate_rip_constant: sparsity exceeds the number of rows");
  }
  workers = std::max(1u, workers);

  RipEstimate result;
  if (mode.kind == RipMode::Kind::exhaustive) {
    const double count = binomial(b, sparsity);
    if (count > kMaxExhaustiveSupports) {
      throw std::invalid_argument("estimate_rip_constant: exhaustive mode needs C(B, W) <= 1e6");
    }
    const Eigen::MatrixXd r = ensemble.dense();
    const Eigen::MatrixXd gram = r.transpose() * r;
    const auto w = static_cast<Eigen::Index>(sparsity);

    std::vector<Best> best(workers);
    parallel_for(workers, workers, [&](std::size_t id) {
      Support c(sparsity);
      std::iota(c.begin(), c.end(), std::size_t{0});
      Eigen::MatrixXd sub(w, w);
      std::size_t counter = 0;
      do {
        if (counter++ % workers != id) continue;
        for (Eigen::Index i = 0; i < w; ++i)
          for (Eigen::Index j = 0; j < w; ++j)
            sub(i, j) = gram(static_cast<Eigen::Index>(c[static_cast<std::size_t>(i)]),
                             static_cast<Eigen::Index>(c[static_cast<std::size_t>(j)]));
        best[id].offer(support_delta(sub), c);
      } while (next_combination(c, b));
    });
    Best merged;
    for (const auto& bst : best)
      if (bst.delta >= 0.0) merged.offer(bst.delta, bst.support);
    result.delta = std::max(0.0, merged.delta);
    result.worst_support = merged.support;
    result.supports_visited = static_cast<std::size_t>(count);
    result.exhaustive = true;
    return result;
  }

  if (mode.n_supports == 0) throw std::invalid_argument("estimate_rip_constant: sampled(0)");
  Rng rng(seed);
  std::vector<std::size_t> all(b);
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<Support> supports(mode.n_supports);
  for (auto& s : supports) {
    s.clear();
    std::sample(all.begin(), all.end(), std::back_inserter(s), sparsity, rng);
  }
  std::vector<double> deltas(supports.size());
  parallel_for(supports.size(), workers, [&](std::size_t i) {
    const Eigen::MatrixXd cols = ensemble.columns(supports[i]);
    deltas[i] = support_delta(cols.transpose() * cols);
  });
  Best merged;
  for (std::size_t i = 0; i < supports.size(); ++i) merged.offer(deltas[i], supports[i]);
  result.delta = std::max(0.0, merged.delta);
  result.worst_support = merged.support;
  result.supports_visited = supports.size();
  result.exhaustive = false;
  return result;
}

}  // namespace cslab
