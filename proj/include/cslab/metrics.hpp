#pragma once

#include <optional>

#include <Eigen/Dense>

#include "cslab/sensing.hpp"
#include "cslab/signal_model.hpp"

namespace cslab {

/// 10 log10 of a power ratio. +inf maps to +inf and 0 to -inf.
double to_db(double linear);
double from_db(double db);

/// In-band input SNR of one realization: ||alpha||^2 / ||(noisy - alpha)|_support||^2.
/// +inf when the in-band noise is exactly zero. Throws std::domain_error for a
/// zero signal and std::invalid_argument on a length mismatch.
double isnr(const SparseSpectrum& signal, const Eigen::VectorXd& noisy_coeffs);

/// ||R alpha||^2 / ||y - R alpha||^2.
double msnr(const MeasurementEnsemble& ensemble, const SparseSpectrum& signal,
            const Eigen::VectorXd& y);
/// Same ratio from an already computed clean measurement R alpha.
double msnr(const Eigen::VectorXd& clean, const Eigen::VectorXd& y);

/// ||alpha||^2 / ||alpha_hat - alpha||^2.
double rsnr(const SparseSpectrum& signal, const Eigen::VectorXd& coeffs_hat);
double rsnr(const Eigen::VectorXd& coeffs, const Eigen::VectorXd& coeffs_hat);

/// SNRs of one trial in dB; a field is empty when it does not apply.
struct SnrReport {
  std::optional<double> isnr_db;
  std::optional<double> msnr_db;
  std::optional<double> rsnr_db;
  std::optional<double> sqnr_db;
};

}  // namespace cslab
