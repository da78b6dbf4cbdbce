#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cslab/recovery.hpp"
#include "cslab/sensing.hpp"
#include "cslab/theory.hpp"

namespace cslab {

enum class Method { oracle, cosamp, bandpass };
std::string_view to_string(Method m);
Method method_from_string(std::string_view name);

struct QuantizerConfig {
  double base_bits = 4.0;   // bit depth at rho = 1; anchors lambda
  double saturation = 1.0;  // G; measurements are scaled so ||beta y||_inf = G
};

struct SweepConfig {
  std::size_t ambient_dim = 0;
  std::size_t band_width = 0;
  std::vector<std::size_t> rho_list;
  std::vector<double> isnr_targets_db{60.0, 40.0, 20.0};
  std::size_t trials_per_point = 200;
  std::vector<Method> methods{Method::oracle, Method::cosamp, Method::bandpass};
  std::uint64_t master_seed = 0;
  std::optional<QuantizerConfig> quantizer;
  Distribution distribution = Distribution::randomized_orthogonal;
  bool orthogonalize = true;
  double measurement_noise_var = 0.0;
  std::optional<std::size_t> band_first_bin;
  CosampOptions cosamp;
  double kappa0 = 0.5;
  double kappa1 = 2.0;

  /// Throws DivisibilityError when some rho does not divide B and
  /// std::invalid_argument for any other inconsistency.
  void validate() const;
};

/// One (point, method, trial) record. SNRs are in dB. A failed trial (alias
/// collision, rank-deficient solve) carries a NaN rsnr_db.
struct ResultRow {
  std::size_t rho = 0;
  std::optional<double> isnr_target_db;
  Method method = Method::oracle;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::optional<double> isnr_db;
  std::optional<double> msnr_db;
  std::optional<double> rsnr_db;
  bool support_exact = false;
  std::optional<int> bits;

  bool failed() const;
  bool operator==(const ResultRow&) const = default;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;  // point-major, then method, then trial
};

/// Per (point, method) aggregate. A dB mean is -10 log10 of the trial mean of
/// 10^(-snr_db/10): the average error-to-signal energy ratio, in dB. Failed
/// trials are excluded and counted.
struct SummaryRow {
  std::size_t rho = 0;
  std::optional<double> isnr_target_db;
  Method method = Method::oracle;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::optional<double> mean_isnr_db;
  std::optional<double> mean_msnr_db;
  std::optional<double> mean_rsnr_db;
  double support_exact_rate = 0.0;
  std::optional<int> bits;
};

/// Aggregates rows as they read back from the CSV (6 significant digits), so
/// recomputing from persisted rows is exact.
std::vector<SummaryRow> summarize(const ExperimentResult& result);

/// Mean of dB values through their linear error ratios (see SummaryRow).
double mean_snr_db(const std::vector<double>& snr_db);

/// Signal, noise and measurement per trial, recovered by each configured
/// method. Points are (rho, isnr) pairs, rho-major.
ExperimentResult run_noise_folding_sweep(const SweepConfig& cfg, unsigned workers = 1);

/// Noise-free signals; measurements scaled to full range and quantized with
/// round(bitdepth_trend) bits (at least 1). Points are the rho values.
ExperimentResult run_quantization_sweep(const SweepConfig& cfg, unsigned workers = 1);

struct BoundContainmentConfig {
  std::size_t ambient_dim = 32;
  std::size_t rows = 16;
  std::size_t sparsity = 2;
  double measurement_noise_var = 1.0;
  double signal_noise_var = 1.0;
  std::size_t trials = 10000;
  std::uint64_t master_seed = 0;
  Distribution distribution = Distribution::gaussian;
  bool orthogonalize = true;
};

struct BracketCheck {
  std::string name;
  theory::Bracket bracket;
  double estimate = 0.0;
  double std_error = 0.0;
  bool inside = false;      // estimate within the bracket
  bool inside_3se = false;  // estimate within the bracket widened by 3 std errors
};

struct BoundContainmentReport {
  RipEstimate rip;
  double subsampling = 0.0;
  Support support;
  std::vector<BracketCheck> checks;
};

/// One ensemble and one signal, exhaustive delta at the signal's sparsity,
/// then Monte Carlo estimates of E||alpha_hat - alpha||^2 under measurement
/// noise, and of MSNR/ISNR and ISNR/RSNR under signal noise, each checked
/// against its bracket at the estimated delta.
BoundContainmentReport run_bound_containment(const BoundContainmentConfig& cfg,
                                             unsigned workers = 1);

struct WhitenessReport {
  double expected_variance = 0.0;        // rho * var_n
  double max_relative_variance_error = 0.0;  // max_i |C_ii - rho var_n| / (rho var_n)
  double max_relative_offdiagonal = 0.0;     // max_{i != j} |C_ij| / (rho var_n)
  std::size_t trials = 0;
};

/// Empirical covariance of R n over `trials` draws of white n.
WhitenessReport measure_noise_whiteness(const MeasurementEnsemble& ensemble,
                                        double signal_noise_var, std::size_t trials,
                                        std::uint64_t seed);

struct RipCampaignConfig {
  std::size_t ambient_dim = 16;
  std::size_t rows = 12;
  std::size_t sparsity = 2;
  Distribution distribution = Distribution::gaussian;
  bool orthogonalize = false;
  RipMode mode = RipMode::exhaustive();
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;

  void validate() const;
};

struct RipRow {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  RipEstimate estimate;
};

/// One fresh ensemble per trial and its estimated RIP constant.
std::vector<RipRow> run_rip_campaign(const RipCampaignConfig& cfg, unsigned workers = 1);

struct DynamicRangeConfig {
  std::size_t ambient_dim = 1024;
  std::size_t band_width = 4;
  std::size_t rho = 16;
  std::vector<int> bits_list{8, 10, 12};
  double target_snr_db = 20.0;
  double saturation = 1.0;
  std::size_t trials = 20;
  std::uint64_t master_seed = 0;

  void validate() const;
};

/// Dynamic range of one signal at one bit depth, in dB. closed_form_db is
/// NaN when the target is outside the admissible interval; an empirical value
/// is NaN when the target fails even at full-range scaling.
struct DynamicRangeRow {
  int bits = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double par = 0.0;
  double closed_form_db = 0.0;
  double conventional_db = 0.0;  // empirical, quantizing the Nyquist samples
  double compressive_db = 0.0;   // empirical, oracle RSNR from quantized measurements
};

std::vector<DynamicRangeRow> run_dynamic_range(const DynamicRangeConfig& cfg,
                                               unsigned workers = 1);

}  // namespace cslab
