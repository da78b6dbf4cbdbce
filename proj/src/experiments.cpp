#include "cslab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>

#include "cslab/errors.hpp"
#include "cslab/fourier.hpp"
#include "cslab/metrics.hpp"
#include "cslab/numfmt.hpp"
#include "cslab/parallel.hpp"
#include "cslab/quantization.hpp"
#include "cslab/seeding.hpp"
#include "cslab/signal_model.hpp"

namespace cslab {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum Stream : std::uint64_t { kSignal = 1, kSignalNoise = 2, kEnsemble = 3, kMeasurementNoise = 4 };

MeasurementEnsemble draw_ensemble(std::size_t rows, std::size_t cols, Distribution distribution,
                                  bool orthogonalize, std::uint64_t seed) {
  MeasurementEnsemble r = generate_ensemble(rows, cols, distribution, seed);
  if (orthogonalize) return orthogonalize_rows(r);
  return r;
}

Eigen::VectorXd gaussian_vector(std::size_t n, double variance, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(variance));
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = normal(rng);
  return v;
}

Eigen::VectorXd decimate(const Eigen::VectorXd& x, std::size_t rho) {
  Eigen::VectorXd out(x.size() / static_cast<Eigen::Index>(rho));
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = x[i * static_cast<Eigen::Index>(rho)];
  return out;
}

void check_divides(std::size_t dim, std::size_t rho) {
  if (rho == 0 || dim % rho != 0) {
    throw DivisibilityError("rho=" + std::to_string(rho) + " does not divide B=" +
                            std::to_string(dim));
  }
}

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

Moments moments(const std::vector<double>& v) {
  Moments m;
  for (double e : v) m.mean += e;
  m.mean /= static_cast<double>(v.size());
  for (double e : v) m.var += (e - m.mean) * (e - m.mean);
  m.var /= static_cast<double>(v.size() - 1);
  return m;
}

double covariance(const std::vector<double>& a, const std::vector<double>& b, double ma,
                  double mb) {
  double c = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) c += (a[i] - ma) * (b[i] - mb);
  return c / static_cast<double>(a.size() - 1);
}

BracketCheck check(std::string name, theory::Bracket bracket, double estimate, double se) {
  BracketCheck c{std::move(name), bracket, estimate, se, false, false};
  c.inside = bracket.contains(estimate);
  c.inside_3se = bracket.low - 3.0 * se <= estimate && estimate <= bracket.high + 3.0 * se;
  return c;
}

// Ratio of means mean(a)/mean(b) with a delta-method standard error.
std::pair<double, double> ratio_of_means(const std::vector<double>& a,
                                         const std::vector<double>& b) {
  const Moments ma = moments(a);
  const Moments mb = moments(b);
  const double n = static_cast<double>(a.size());
  const double r = ma.mean / mb.mean;
  const double rel = ma.var / (ma.mean * ma.mean) + mb.var / (mb.mean * mb.mean) -
                     2.0 * covariance(a, b, ma.mean, mb.mean) / (ma.mean * mb.mean);
  return {r, std::abs(r) * std::sqrt(std::max(rel, 0.0) / n)};
}

std::vector<ResultRow> assemble(std::vector<std::vector<ResultRow>>& slots, std::size_t points,
                                std::size_t trials, std::size_t methods) {
  std::vector<ResultRow> rows;
  rows.reserve(points * trials * methods);
  for (std::size_t p = 0; p < points; ++p) {
    for (std::size_t m = 0; m < methods; ++m) {
      for (std::size_t t = 0; t < trials; ++t) rows.push_back(slots[p * trials + t][m]);
    }
  }
  return rows;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::oracle: return "oracle";
    case Method::cosamp: return "cosamp";
    case Method::bandpass: return "bandpass";
  }
  return "unknown";
}

Method method_from_string(std::string_view name) {
  if (name == "oracle") return Method::oracle;
  if (name == "cosamp") return Method::cosamp;
  if (name == "bandpass") return Method::bandpass;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

void SweepConfig::validate() const {
  if (ambient_dim == 0) throw std::invalid_argument("B must be >= 1");
  if (band_width == 0 || band_width > ambient_dim) throw std::invalid_argument("W must be in [1, B]");
  if (rho_list.empty()) throw std::invalid_argument("rho_list must not be empty");
  for (const std::size_t rho : rho_list) check_divides(ambient_dim, rho);
  if (trials_per_point == 0) throw std::invalid_argument("trials must be >= 1");
  if (trials_per_point > 0xFFFFFFFFull) throw std::invalid_argument("trials must be below 2^32");
  if (methods.empty()) throw std::invalid_argument("methods must not be empty");
  for (std::size_t i = 0; i < methods.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (methods[i] == methods[j]) throw std::invalid_argument("methods must be unique");
    }
  }
  if (!(measurement_noise_var >= 0.0)) {
    throw std::invalid_argument("measurement_noise_var must be >= 0");
  }
  if (band_first_bin && *band_first_bin + band_width > ambient_dim) {
    throw std::invalid_argument("band_first_bin places the band outside [0, B)");
  }
  if (cosamp.max_iter == 0 || !(cosamp.tol > 0.0)) {
    throw std::invalid_argument("cosamp needs max_iter >= 1 and tol > 0");
  }
  if (!(kappa0 > 0.0) || !(kappa1 > 0.0)) throw std::invalid_argument("kappa0 and kappa1 must be > 0");
  if (distribution == Distribution::randomized_orthogonal && !orthogonalize) {
    throw std::invalid_argument("the randomized_orthogonal ensemble is always row-orthogonal");
  }
  if (quantizer) {
    if (!(quantizer->base_bits >= 1.0)) throw std::invalid_argument("base_bits must be >= 1");
    if (!(quantizer->saturation > 0.0)) throw std::invalid_argument("saturation must be > 0");
    if (std::find(methods.begin(), methods.end(), Method::bandpass) != methods.end()) {
      throw std::invalid_argument("the quantization sweep supports oracle and cosamp only");
    }
  } else if (isnr_targets_db.empty()) {
    throw std::invalid_argument("isnr_targets_db must not be empty");
  }
}

bool ResultRow::failed() const { return rsnr_db && std::isnan(*rsnr_db); }

double mean_snr_db(const std::vector<double>& snr_db) {
  if (snr_db.empty()) return kNaN;
  double acc = 0.0;
  for (double v : snr_db) acc += std::pow(10.0, -v / 10.0);
  return -10.0 * std::log10(acc / static_cast<double>(snr_db.size()));
}

std::vector<SummaryRow> summarize(const ExperimentResult& result) {
  using Key = std::tuple<std::size_t, bool, double, Method>;
  std::map<Key, std::size_t> index;
  std::vector<SummaryRow> out;
  struct Acc {
    std::vector<double> isnr, msnr, rsnr;
    std::size_t exact = 0;
  };
  std::vector<Acc> accs;

  for (const ResultRow& row : result.rows) {
    const Key key{row.rho, row.isnr_target_db.has_value(),
                  row.isnr_target_db ? round_sig6(*row.isnr_target_db) : 0.0, row.method};
    auto [it, inserted] = index.emplace(key, out.size());
    if (inserted) {
      SummaryRow s;
      s.rho = row.rho;
      if (row.isnr_target_db) s.isnr_target_db = round_sig6(*row.isnr_target_db);
      s.method = row.method;
      s.bits = row.bits;
      out.push_back(s);
      accs.emplace_back();
    }
    SummaryRow& s = out[it->second];
    Acc& acc = accs[it->second];
    ++s.trials;
    if (row.failed()) {
      ++s.failures;
      continue;
    }
    if (row.isnr_db) acc.isnr.push_back(round_sig6(*row.isnr_db));
    if (row.msnr_db) acc.msnr.push_back(round_sig6(*row.msnr_db));
    if (row.rsnr_db) acc.rsnr.push_back(round_sig6(*row.rsnr_db));
    if (row.support_exact) ++acc.exact;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Acc& acc = accs[i];
    if (!acc.isnr.empty()) out[i].mean_isnr_db = mean_snr_db(acc.isnr);
    if (!acc.msnr.empty()) out[i].mean_msnr_db = mean_snr_db(acc.msnr);
    if (!acc.rsnr.empty()) out[i].mean_rsnr_db = mean_snr_db(acc.rsnr);
    out[i].support_exact_rate =
        static_cast<double>(acc.exact) / static_cast<double>(out[i].trials);
  }
  return out;
}

ExperimentResult run_noise_folding_sweep(const SweepConfig& cfg, unsigned workers) {
  cfg.validate();
  if (cfg.quantizer) throw std::invalid_argument("noise-folding sweep takes no quantizer");
  const std::size_t n_isnr = cfg.isnr_targets_db.size();
  const std::size_t points = cfg.rho_list.size() * n_isnr;
  const std::size_t trials = cfg.trials_per_point;
  const bool needs_ensemble =
      std::any_of(cfg.methods.begin(), cfg.methods.end(),
                  [](Method m) { return m != Method::bandpass; });

  std::vector<std::vector<ResultRow>> slots(points * trials);
  parallel_for(points * trials, workers, [&](std::size_t item) {
    const std::size_t point = item / trials;
    const std::size_t trial = item % trials;
    const std::size_t rho = cfg.rho_list[point / n_isnr];
    const double target = cfg.isnr_targets_db[point % n_isnr];
    const std::size_t rows = cfg.ambient_dim / rho;
    const std::uint64_t seed = derive_trial_seed(cfg.master_seed, point, trial);

    const SparseSpectrum signal = generate_bandlimited(
        cfg.ambient_dim, cfg.band_width, cfg.band_first_bin, derive_stream_seed(seed, kSignal));
    const double noise_var = noise_variance_for_isnr(signal, target);
    const Eigen::VectorXd noisy =
        add_signal_noise(signal, noise_var, derive_stream_seed(seed, kSignalNoise));
    const double isnr_db = to_db(isnr(signal, noisy));

    std::optional<MeasurementEnsemble> ensemble;
    Eigen::VectorXd y;
    double msnr_db = kNaN;
    if (needs_ensemble) {
      ensemble.emplace(draw_ensemble(rows, cfg.ambient_dim, cfg.distribution, cfg.orthogonalize,
                                     derive_stream_seed(seed, kEnsemble)));
      y = measure(*ensemble, noisy, cfg.measurement_noise_var,
                  derive_stream_seed(seed, kMeasurementNoise));
      msnr_db = to_db(msnr(ensemble->apply(signal.coeffs()), y));
    }

    auto& out = slots[item];
    out.reserve(cfg.methods.size());
    for (const Method method : cfg.methods) {
      ResultRow row;
      row.rho = rho;
      row.isnr_target_db = target;
      row.method = method;
      row.trial = trial;
      row.seed = seed;
      row.isnr_db = isnr_db;
      row.msnr_db = msnr_db;
      try {
        switch (method) {
          case Method::oracle: {
            const RecoveryOutput r = oracle_recover(*ensemble, y, signal.support());
            row.rsnr_db = to_db(rsnr(signal, r.coeffs_hat));
            row.support_exact = true;
            break;
          }
          case Method::cosamp: {
            const RecoveryOutput r = cosamp(*ensemble, y, cfg.band_width, cfg.cosamp);
            row.rsnr_db = to_db(rsnr(signal, r.coeffs_hat));
            row.support_exact = r.support_hat == signal.support();
            break;
          }
          case Method::bandpass: {
            const SampleVector clean = synthesize(signal);
            const SampleVector x{fourier::synthesize(noisy), clean.nyquist_rate};
            row.msnr_db = to_db(msnr(decimate(clean.samples, rho), decimate(x.samples, rho)));
            const RecoveryOutput r = bandpass_baseline(x, rho, signal.support());
            row.rsnr_db = to_db(rsnr(signal, r.coeffs_hat));
            row.support_exact = true;
            break;
          }
        }
      } catch (const AliasCollisionError&) {
        row.rsnr_db = kNaN;
        row.support_exact = false;
      } catch (const RankDeficientError&) {
        row.rsnr_db = kNaN;
        row.support_exact = false;
      }
      out.push_back(row);
    }
  });
  return {assemble(slots, points, trials, cfg.methods.size())};
}

ExperimentResult run_quantization_sweep(const SweepConfig& cfg, unsigned workers) {
  cfg.validate();
  if (!cfg.quantizer) throw std::invalid_argument("quantization sweep needs a quantizer");
  const QuantizerConfig qc = *cfg.quantizer;
  const double dim = static_cast<double>(cfg.ambient_dim);
  const double lambda = qc.base_bits + 10.0 * std::log10(dim) / 2.3;
  const std::size_t points = cfg.rho_list.size();
  const std::size_t trials = cfg.trials_per_point;

  std::vector<std::vector<ResultRow>> slots(points * trials);
  parallel_for(points * trials, workers, [&](std::size_t item) {
    const std::size_t point = item / trials;
    const std::size_t trial = item % trials;
    const std::size_t rho = cfg.rho_list[point];
    const std::uint64_t seed = derive_trial_seed(cfg.master_seed, point, trial);
    const int bits = std::max(
        1, static_cast<int>(std::lround(theory::bitdepth_trend(lambda, dim, static_cast<double>(rho)))));
    const QuantizerSpec q(bits, qc.saturation);

    const SparseSpectrum signal = generate_bandlimited(
        cfg.ambient_dim, cfg.band_width, cfg.band_first_bin, derive_stream_seed(seed, kSignal));
    const MeasurementEnsemble ensemble =
        draw_ensemble(cfg.ambient_dim / rho, cfg.ambient_dim, cfg.distribution, cfg.orthogonalize,
                      derive_stream_seed(seed, kEnsemble));
    const Eigen::VectorXd y = ensemble.apply(signal.coeffs());
    const double beta = qc.saturation / y.cwiseAbs().maxCoeff();
    const Eigen::VectorXd y_hat = quantize(q, Eigen::VectorXd(beta * y)) / beta;
    const double msnr_db = to_db(msnr(y, y_hat));

    auto& out = slots[item];
    for (const Method method : cfg.methods) {
      ResultRow row;
      row.rho = rho;
      row.method = method;
      row.trial = trial;
      row.seed = seed;
      row.isnr_db = std::numeric_limits<double>::infinity();
      row.msnr_db = msnr_db;
      row.bits = bits;
      try {
        const RecoveryOutput r = method == Method::oracle
                                     ? oracle_recover(ensemble, y_hat, signal.support())
                                     : cosamp(ensemble, y_hat, cfg.band_width, cfg.cosamp);
        row.rsnr_db = to_db(rsnr(signal, r.coeffs_hat));
        row.support_exact = r.support_hat == signal.support();
      } catch (const RankDeficientError&) {
        row.rsnr_db = kNaN;
      }
      out.push_back(row);
    }
  });
  return {assemble(slots, points, trials, cfg.methods.size())};
}

BoundContainmentReport run_bound_containment(const BoundContainmentConfig& cfg, unsigned workers) {
  if (cfg.trials < 2) throw std::invalid_argument("bound containment needs >= 2 trials");
  if (cfg.sparsity == 0 || cfg.sparsity > cfg.rows) throw std::invalid_argument("need 1 <= W <= M");
  const std::uint64_t base = derive_trial_seed(cfg.master_seed, 0, 0);
  const MeasurementEnsemble ensemble =
      draw_ensemble(cfg.rows, cfg.ambient_dim, cfg.distribution, cfg.orthogonalize,
                    derive_stream_seed(base, kEnsemble));
  const SparseSpectrum signal = generate_bandlimited(cfg.ambient_dim, cfg.sparsity, std::nullopt,
                                                     derive_stream_seed(base, kSignal));
  const Support& support = signal.support();

  BoundContainmentReport report;
  report.subsampling = ensemble.subsampling();
  report.support = support;
  report.rip = estimate_rip_constant(ensemble, cfg.sparsity, RipMode::exhaustive(), base, workers);
  const double delta = report.rip.delta;

  const Eigen::MatrixXd dense = ensemble.dense();
  const Eigen::MatrixXd restricted = ensemble.columns(support);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(restricted);
  qr.setThreshold(1e-10);
  if (qr.rank() < restricted.cols()) throw RankDeficientError("bound containment: R_L is rank deficient");
  const Eigen::MatrixXd pinv =
      qr.solve(Eigen::MatrixXd::Identity(restricted.rows(), restricted.rows()));

  const std::size_t n = cfg.trials;
  std::vector<double> meas_err(n), folded(n), in_band(n), recovered(n);
  parallel_for(n, workers, [&](std::size_t t) {
    Rng meas_rng(derive_stream_seed(derive_trial_seed(cfg.master_seed, 1, t), kMeasurementNoise));
    const Eigen::VectorXd e = gaussian_vector(cfg.rows, cfg.measurement_noise_var, meas_rng);
    meas_err[t] = (pinv * e).squaredNorm();

    Rng sig_rng(derive_stream_seed(derive_trial_seed(cfg.master_seed, 2, t), kSignalNoise));
    const Eigen::VectorXd noise = gaussian_vector(cfg.ambient_dim, cfg.signal_noise_var, sig_rng);
    const Eigen::VectorXd rn = dense * noise;
    folded[t] = rn.squaredNorm();
    in_band[t] = restrict_to(noise, support).squaredNorm();
    recovered[t] = (pinv * rn).squaredNorm();
  });

  const double w = static_cast<double>(cfg.sparsity);
  const Moments err = moments(meas_err);
  report.checks.push_back(check("error_energy",
                                theory::thm1_error_bounds(w, cfg.measurement_noise_var, delta),
                                err.mean, std::sqrt(err.var / static_cast<double>(n))));

  const double gain = ensemble.apply(signal.coeffs()).squaredNorm() / signal.coeffs().squaredNorm();
  const auto [in_over_folded, se_ratio] = ratio_of_means(in_band, folded);
  report.checks.push_back(check(
      "msnr_over_isnr",
      theory::thm2_msnr_over_isnr_bounds(w, static_cast<double>(cfg.ambient_dim), delta),
      gain * in_over_folded, gain * se_ratio));

  const auto [loss, se_loss] = ratio_of_means(recovered, in_band);
  report.checks.push_back(
      check("isnr_over_rsnr", theory::thm3_snr_loss_bounds(report.subsampling, delta), loss, se_loss));
  return report;
}

WhitenessReport measure_noise_whiteness(const MeasurementEnsemble& ensemble,
                                        double signal_noise_var, std::size_t trials,
                                        std::uint64_t seed) {
  if (trials < 2) throw std::invalid_argument("measure_noise_whiteness: need >= 2 trials");
  if (!(signal_noise_var > 0.0)) throw std::invalid_argument("measure_noise_whiteness: var must be > 0");
  const auto m = static_cast<Eigen::Index>(ensemble.rows());
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd first = Eigen::VectorXd::Zero(m);
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const Eigen::VectorXd z =
        ensemble.apply(gaussian_vector(ensemble.cols(), signal_noise_var, rng));
    first += z;
    second.selfadjointView<Eigen::Lower>().rankUpdate(z);
  }
  const double n = static_cast<double>(trials);
  Eigen::MatrixXd cov = second.selfadjointView<Eigen::Lower>();
  cov = (cov - first * first.transpose() / n) / (n - 1.0);

  WhitenessReport r;
  r.trials = trials;
  r.expected_variance = ensemble.subsampling() * signal_noise_var;
  for (Eigen::Index i = 0; i < m; ++i) {
    r.max_relative_variance_error = std::max(
        r.max_relative_variance_error, std::abs(cov(i, i) - r.expected_variance) / r.expected_variance);
    for (Eigen::Index j = 0; j < i; ++j) {
      r.max_relative_offdiagonal =
          std::max(r.max_relative_offdiagonal, std::abs(cov(i, j)) / r.expected_variance);
    }
  }
  return r;
}

void RipCampaignConfig::validate() const {
  if (rows == 0 || rows > ambient_dim) throw std::invalid_argument("need 1 <= M <= B");
  if (sparsity == 0 || sparsity > rows) throw std::invalid_argument("need 1 <= W <= M");
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (mode.kind == RipMode::Kind::exhaustive && binomial(ambient_dim, sparsity) > kMaxExhaustiveSupports) {
    throw std::invalid_argument("exhaustive mode needs C(B, W) <= 1e6; use sampled mode");
  }
  if (mode.kind == RipMode::Kind::sampled && mode.n_supports == 0) {
    throw std::invalid_argument("sampled mode needs n_supports >= 1");
  }
  if (distribution == Distribution::randomized_orthogonal && !orthogonalize) {
    throw std::invalid_argument("the randomized_orthogonal ensemble is always row-orthogonal");
  }
}

std::vector<RipRow> run_rip_campaign(const RipCampaignConfig& cfg, unsigned workers) {
  cfg.validate();
  std::vector<RipRow> rows(cfg.trials);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed = derive_trial_seed(cfg.master_seed, 0, t);
    const MeasurementEnsemble r = draw_ensemble(cfg.rows, cfg.ambient_dim, cfg.distribution,
                                                cfg.orthogonalize, derive_stream_seed(seed, kEnsemble));
    rows[t] = {t, seed, estimate_rip_constant(r, cfg.sparsity, cfg.mode, seed, workers)};
  }
  return rows;
}

void DynamicRangeConfig::validate() const {
  if (band_width == 0 || band_width > ambient_dim) throw std::invalid_argument("W must be in [1, B]");
  check_divides(ambient_dim, rho);
  if (ambient_dim / rho < band_width) throw std::invalid_argument("need M = B/rho >= W");
  if (bits_list.empty()) throw std::invalid_argument("bits_list must not be empty");
  for (int b : bits_list) {
    if (b < 1 || b > 52) throw std::invalid_argument("bits must be in [1, 52]");
  }
  if (!(saturation > 0.0)) throw std::invalid_argument("saturation must be > 0");
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
}

std::vector<DynamicRangeRow> run_dynamic_range(const DynamicRangeConfig& cfg, unsigned workers) {
  cfg.validate();
  const double target = from_db(cfg.target_snr_db);
  const std::size_t n_bits = cfg.bits_list.size();
  std::vector<DynamicRangeRow> rows(cfg.trials * n_bits);

  parallel_for(cfg.trials, workers, [&](std::size_t t) {
    const std::uint64_t seed = derive_trial_seed(cfg.master_seed, 0, t);
    const SparseSpectrum signal = generate_bandlimited(cfg.ambient_dim, cfg.band_width, std::nullopt,
                                                       derive_stream_seed(seed, kSignal));
    const Eigen::VectorXd x = synthesize(signal).samples;
    const MeasurementEnsemble ensemble =
        generate_ensemble(cfg.ambient_dim / cfg.rho, cfg.ambient_dim,
                          Distribution::randomized_orthogonal, derive_stream_seed(seed, kEnsemble));
    const Eigen::VectorXd y = ensemble.apply(signal.coeffs());
    const Eigen::VectorXd in_band = restrict_to(signal.coeffs(), signal.support());
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ensemble.columns(signal.support()));

    for (std::size_t b = 0; b < n_bits; ++b) {
      const QuantizerSpec q(cfg.bits_list[b], cfg.saturation);
      DynamicRangeRow row{cfg.bits_list[b], t, seed, par(x), kNaN, kNaN, kNaN};
      try {
        row.closed_form_db = dynamic_range_closed_form(q, x, target).dr_db;
      } catch (const std::domain_error&) {
      }
      try {
        const auto conv = [&](double beta) { return sqnr(q, Eigen::VectorXd(beta * x)); };
        row.conventional_db = dynamic_range_empirical(q, x, target, conv).dr_db;
      } catch (const std::domain_error&) {
      }
      try {
        const auto cs = [&](double beta) {
          const Eigen::VectorXd yq = quantize(q, Eigen::VectorXd(beta * y)) / beta;
          return rsnr(in_band, Eigen::VectorXd(qr.solve(yq)));
        };
        row.compressive_db = dynamic_range_empirical(q, y, target, cs).dr_db;
      } catch (const std::domain_error&) {
      }
      rows[t * n_bits + b] = row;
    }
  });
  return rows;
}

}  // namespace cslab
