#include "cslab/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cslab {
namespace {

double energy_ratio(double signal, double error) {
  if (signal == 0.0) throw std::domain_error("snr: zero signal");
  if (error == 0.0) return std::numeric_limits<double>::infinity();
  return signal / error;
}

void check_same_length(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": length mismatch");
}

}  // namespace

double to_db(double linear) { return 10.0 * std::log10(linear); }

double from_db(double db) { return std::pow(10.0, db / 10.0); }

double isnr(const SparseSpectrum& signal, const Eigen::VectorXd& noisy_coeffs) {
  check_same_length(signal.coeffs().size(), noisy_coeffs.size(), "isnr");
  double in_band = 0.0;
  for (const std::size_t k : signal.support()) {
    const auto i = static_cast<Eigen::Index>(k);
    const double d = noisy_coeffs[i] - signal.coeffs()[i];
    in_band += d * d;
  }
  return energy_ratio(signal.coeffs().squaredNorm(), in_band);
}

double msnr(const MeasurementEnsemble& ensemble, const SparseSpectrum& signal,
            const Eigen::VectorXd& y) {
  return msnr(ensemble.apply(signal.coeffs()), y);
}

double msnr(const Eigen::VectorXd& clean, const Eigen::VectorXd& y) {
  check_same_length(clean.size(), y.size(), "msnr");
  return energy_ratio(clean.squaredNorm(), (y - clean).squaredNorm());
}

double rsnr(const SparseSpectrum& signal, const Eigen::VectorXd& coeffs_hat) {
  return rsnr(signal.coeffs(), coeffs_hat);
}

double rsnr(const Eigen::VectorXd& coeffs, const Eigen::VectorXd& coeffs_hat) {
  check_same_length(coeffs.size(), coeffs_hat.size(), "rsnr");
  return energy_ratio(coeffs.squaredNorm(), (coeffs_hat - coeffs).squaredNorm());
}

}  // namespace cslab
