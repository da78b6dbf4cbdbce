#pragma once

#include <cstddef>

namespace cslab::theory {

struct Bracket {
  double low = 0.0;
  double high = 0.0;

  bool contains(double v) const { return low <= v && v <= high; }
};

/// RSNR / MSNR for oracle recovery with measurement noise:
/// [((1-d)/(1+d)) M/W, ((1+d)/(1-d)) M/W]. high is +inf at d >= 1.
Bracket thm1_rsnr_over_msnr_bounds(double rows, double sparsity, double delta);

/// E||alpha_hat - alpha||^2 for oracle recovery: [W var_e/(1+d), W var_e/(1-d)].
Bracket thm1_error_bounds(double sparsity, double measurement_noise_var, double delta);

/// MSNR / ISNR under white signal noise: [(1-d) W/B, (1+d) W/B].
Bracket thm2_msnr_over_isnr_bounds(double sparsity, double ambient_dim, double delta);

/// ISNR / RSNR under white signal noise: [rho/(1+d), rho/(1-d)].
Bracket thm3_snr_loss_bounds(double rho, double delta);

/// Largest subsampling that still allows blind recovery:
/// min(kappa0 * rho_max / ln(rho_max), rho_max), and 1 when rho_max <= 1.
double rho_cs(double rho_max, double kappa0);

/// Bits needed at subsampling rho to hold the RSNR of a lambda-anchored
/// Nyquist system: lambda - 10 log10(B / rho) / 2.3.
double bitdepth_trend(double lambda, double ambient_dim, double rho);

/// Extra bits per octave of subsampling: 10 log10(2) / 2.3.
double bit_gain_per_octave();

struct DesignRuleReport {
  double rho_max = 0.0;
  double rho_cs = 0.0;
  double noise_figure_db = 0.0;
  double bit_gain = 0.0;
  double projected_bits = 0.0;
  double projected_dr_db = 0.0;
  double sampling_rate = 0.0;  // B / rho_cs, same units as B
};

/// Receiver sizing from bandwidth B and occupied band W (any common unit).
/// Throws std::invalid_argument unless 0 < W <= B and kappa0 > 0.
DesignRuleReport design_rules(double ambient_dim, double band_width, double kappa0,
                              double base_bits);

/// RSNR(beta x) lower bound from the measurement SQNR: sqnr_y / ((1+d) kappa1^2).
double lemma4_rsnr_bound(double sqnr_y, double delta, double kappa1);

/// SQNR(beta y) lower bound at full-range scaling:
/// (1-d) rho (x_inf^2 / y_inf^2) (1/gamma_x^2) 4^b.
double lemma5_sqnr_y_bound(int bits, double gamma_x, double delta, double rho, double x_inf,
                           double y_inf);

struct ProbabilisticBound {
  double bound = 0.0;
  double probability = 0.0;
};

/// rho ||x||_inf^2 / ||y||_inf^2 >= gamma_x^2 / (4 ln M) with probability at
/// least 1 - 2/M.
ProbabilisticBound lemma8_par_bound(double gamma_x, std::size_t rows);

/// Informational only: 6.02 b - 20 log10(gamma) + 4.77 dB under a uniform
/// error model.
double expected_sqnr_uniform_db(int bits, double gamma);

/// Floor of rho ||x||_inf^2 / ||y||_inf^2 when every |y_j| <= rho ||x||_inf: 1/rho.
double worst_case_par_ratio_floor(double rho);

}  // namespace cslab::theory
