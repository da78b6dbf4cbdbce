#pragma once

#include <functional>
#include <string_view>

#include <Eigen/Dense>

namespace cslab {

/// Midrise uniform quantizer with b bits saturating at +-G.
class QuantizerSpec {
 public:
  /// Throws std::invalid_argument unless bits >= 1 and saturation > 0.
  QuantizerSpec(int bits, double saturation);

  int bits() const { return bits_; }
  double saturation() const { return saturation_; }
  /// Delta = 2^(1-b) G.
  double interval() const { return interval_; }
  /// 2G / Delta = 2^b.
  double levels() const { return 2.0 * saturation_ / interval_; }

 private:
  int bits_;
  double saturation_;
  double interval_;
};

/// Delta * (floor(v / Delta) + 1/2), clamped to +-(G - Delta/2). A value on a
/// cell boundary k*Delta maps to the level above it.
double quantize(const QuantizerSpec& q, double v);
Eigen::VectorXd quantize(const QuantizerSpec& q, const Eigen::VectorXd& v);

/// ||v||^2 / ||v - Q(v)||^2 as a linear ratio; +inf when the error is exactly
/// zero. Throws std::domain_error for the zero vector.
double sqnr(const QuantizerSpec& q, const Eigen::VectorXd& v);

enum class DynamicRangeMethod { closed_form, empirical_search };
std::string_view to_string(DynamicRangeMethod m);

struct DynamicRangeResult {
  double beta_min = 0.0;
  double beta_max = 0.0;
  double dr_linear = 0.0;  // (beta_max / beta_min)^2
  double dr_db = 0.0;      // 10 log10(dr_linear)
  DynamicRangeMethod method = DynamicRangeMethod::closed_form;
};

/// Largest admissible SNR target for the closed form: (2G/Delta)^2 / gamma(x)^2.
double max_admissible_target(const QuantizerSpec& q, const Eigen::VectorXd& x);

/// Scalings from the conventional-ADC bound:
///   beta_min^2 = C B (Delta/2)^2 / ||x||^2
///   beta_max^2 = (C B / ||x||^2) (G^2 - (Delta/2)^2) / (C gamma^2 - 1)
/// so dr_linear = ((2G/Delta)^2 - 1) / (C gamma^2 - 1). Throws
/// std::domain_error unless 1 < C <= max_admissible_target(q, x).
DynamicRangeResult dynamic_range_closed_form(const QuantizerSpec& q, const Eigen::VectorXd& x,
                                             double target);

struct EmpiricalSearchOptions {
  double grid_span = 1e6;         // grid covers anchor * [1/span, span]
  int points_per_decade = 20;
  double relative_resolution = 1e-3;
};

/// Scalar search for the interval of scalings beta with snr_fn(beta) >= C
/// around the anchor G / ||x||_inf. Walks a log-spaced grid outward from the
/// anchor while the target holds, then bisects each failing edge down to the
/// relative resolution. Every grid and bisection point inside the returned
/// interval met the target. Throws std::domain_error ("target unachievable")
/// if the anchor itself fails.
DynamicRangeResult dynamic_range_empirical(const QuantizerSpec& q, const Eigen::VectorXd& x,
                                           double target,
                                           const std::function<double(double)>& snr_fn,
                                           const EmpiricalSearchOptions& options = {});

}  // namespace cslab
