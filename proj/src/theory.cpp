#include "cslab/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cslab::theory {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_delta(double delta) {
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be >= 0");
}

double lower_factor(double delta) { return std::max(0.0, 1.0 - delta); }

double upper_reciprocal(double delta) { return delta >= 1.0 ? kInf : 1.0 / (1.0 - delta); }

}  // namespace

Bracket thm1_rsnr_over_msnr_bounds(double rows, double sparsity, double delta) {
  check_delta(delta);
  if (!(rows > 0.0) || !(sparsity > 0.0)) throw std::invalid_argument("M and W must be positive");
  const double ratio = rows / sparsity;
  return {lower_factor(delta) / (1.0 + delta) * ratio,
          (1.0 + delta) * upper_reciprocal(delta) * ratio};
}

Bracket thm1_error_bounds(double sparsity, double measurement_noise_var, double delta) {
  check_delta(delta);
  const double scale = sparsity * measurement_noise_var;
  return {scale / (1.0 + delta), scale * upper_reciprocal(delta)};
}

Bracket thm2_msnr_over_isnr_bounds(double sparsity, double ambient_dim, double delta) {
  check_delta(delta);
  if (!(ambient_dim > 0.0)) throw std::invalid_argument("B must be positive");
  const double ratio = sparsity / ambient_dim;
  return {lower_factor(delta) * ratio, (1.0 + delta) * ratio};
}

Bracket thm3_snr_loss_bounds(double rho, double delta) {
  check_delta(delta);
  return {rho / (1.0 + delta), rho * upper_reciprocal(delta)};
}

double rho_cs(double rho_max, double kappa0) {
  if (!(kappa0 > 0.0)) throw std::invalid_argument("rho_cs: kappa0 must be positive");
  if (!(rho_max > 0.0)) throw std::invalid_argument("rho_cs: rho_max must be positive");
  if (rho_max <= 1.0) return 1.0;
  return std::min(kappa0 * rho_max / std::log(rho_max), rho_max);
}

double bitdepth_trend(double lambda, double ambient_dim, double rho) {
  if (!(ambient_dim > 0.0) || !(rho > 0.0)) {
    throw std::invalid_argument("bitdepth_trend: B and rho must be positive");
  }
  return lambda - 10.0 * std::log10(ambient_dim / rho) / 2.3;
}

double bit_gain_per_octave() { return 10.0 * std::log10(2.0) / 2.3; }

DesignRuleReport design_rules(double ambient_dim, double band_width, double kappa0,
                              double base_bits) {
  if (!(band_width > 0.0) || !(band_width <= ambient_dim)) {
    throw std::invalid_argument("design_rules: need 0 < W <= B");
  }
  DesignRuleReport r;
  r.rho_max = ambient_dim / band_width;
  r.rho_cs = rho_cs(r.rho_max, kappa0);
  r.noise_figure_db = 10.0 * std::log10(r.rho_cs);
  r.bit_gain = bit_gain_per_octave() * std::log2(r.rho_cs);
  r.projected_bits = base_bits + r.bit_gain;
  r.projected_dr_db = 6.02 * r.projected_bits;
  r.sampling_rate = ambient_dim / r.rho_cs;
  return r;
}

double lemma4_rsnr_bound(double sqnr_y, double delta, double kappa1) {
  check_delta(delta);
  return sqnr_y / ((1.0 + delta) * kappa1 * kappa1);
}

double lemma5_sqnr_y_bound(int bits, double gamma_x, double delta, double rho, double x_inf,
                           double y_inf) {
  check_delta(delta);
  const double ratio = (x_inf * x_inf) / (y_inf * y_inf);
  return lower_factor(delta) * rho * ratio / (gamma_x * gamma_x) * std::pow(4.0, bits);
}

ProbabilisticBound lemma8_par_bound(double gamma_x, std::size_t rows) {
  if (rows < 2) throw std::invalid_argument("lemma8_par_bound: need M >= 2");
  const double m = static_cast<double>(rows);
  return {gamma_x * gamma_x / (4.0 * std::log(m)), 1.0 - 2.0 / m};
}

double expected_sqnr_uniform_db(int bits, double gamma) {
  return 6.02 * bits - 20.0 * std::log10(gamma) + 4.77;
}

double worst_case_par_ratio_floor(double rho) {
  if (!(rho >= 1.0)) throw std::invalid_argument("worst_case_par_ratio_floor: rho must be >= 1");
  return 1.0 / rho;
}

}  // namespace cslab::theory
