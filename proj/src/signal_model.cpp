#include "cslab/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cslab/fourier.hpp"
#include "cslab/seeding.hpp"

namespace cslab {

SparseSpectrum::SparseSpectrum(Support support, Eigen::VectorXd coeffs)
    : support_(std::move(support)), coeffs_(std::move(coeffs)) {
  const auto dim = static_cast<std::size_t>(coeffs_.size());
  if (dim == 0) throw std::invalid_argument("SparseSpectrum: ambient dimension must be >= 1");
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (support_[i] >= dim) throw std::invalid_argument("SparseSpectrum: support index out of range");
    if (i > 0 && support_[i] <= support_[i - 1]) {
      throw std::invalid_argument("SparseSpectrum: support must be strictly increasing");
    }
  }
  std::size_t s = 0;
  for (std::size_t k = 0; k < dim; ++k) {
    if (s < support_.size() && support_[s] == k) {
      ++s;
      continue;
    }
    if (coeffs_[static_cast<Eigen::Index>(k)] != 0.0) {
      throw std::invalid_argument("SparseSpectrum: nonzero coefficient off the support");
    }
  }
}

void NoiseSpec::validate() const {
  if (!(signal_noise_var >= 0.0) || !(measurement_noise_var >= 0.0)) {
    throw std::invalid_argument("NoiseSpec: variances must be nonnegative");
  }
}

SampleVector synthesize(const SparseSpectrum& spectrum) {
  return {fourier::synthesize(spectrum.coeffs()), static_cast<double>(spectrum.ambient_dim())};
}

SparseSpectrum generate_bandlimited(std::size_t ambient_dim, std::size_t band_width,
                                    std::optional<std::size_t> first_bin, std::uint64_t seed) {
  if (ambient_dim == 0) throw std::invalid_argument("generate_bandlimited: ambient_dim must be >= 1");
  if (band_width == 0 || band_width > ambient_dim) {
    throw std::invalid_argument("generate_bandlimited: band width must be in [1, B]");
  }
  const std::size_t last_start = ambient_dim - band_width;
  Rng rng(seed);
  std::size_t start = 0;
  if (first_bin) {
    if (*first_bin > last_start) {
      throw std::invalid_argument("generate_bandlimited: band does not fit at requested bin");
    }
    start = *first_bin;
  } else {
    start = std::uniform_int_distribution<std::size_t>(0, last_start)(rng);
  }

  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ambient_dim));
  Support support(band_width);
  for (std::size_t i = 0; i < band_width; ++i) {
    support[i] = start + i;
    coeffs[static_cast<Eigen::Index>(start + i)] = normal(rng);
  }
  return {std::move(support), std::move(coeffs)};
}

double par(const Eigen::VectorXd& x) {
  const double l2 = x.norm();
  if (x.size() == 0 || l2 == 0.0) throw std::domain_error("par: zero vector");
  const double peak = x.cwiseAbs().maxCoeff();
  return peak / (l2 / std::sqrt(static_cast<double>(x.size())));
}

double par(const SampleVector& x) { return par(x.samples); }

Eigen::VectorXd add_signal_noise(const SparseSpectrum& spectrum, double variance,
                                 std::uint64_t seed) {
  if (!(variance >= 0.0)) throw std::invalid_argument("add_signal_noise: variance must be >= 0");
  Eigen::VectorXd out = spectrum.coeffs();
  if (variance == 0.0) return out;
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(variance));
  for (Eigen::Index k = 0; k < out.size(); ++k) out[k] += normal(rng);
  return out;
}

double noise_variance_for_isnr(const SparseSpectrum& spectrum, double isnr_db) {
  const double energy = spectrum.coeffs().squaredNorm();
  if (energy == 0.0 || spectrum.sparsity() == 0) {
    throw std::domain_error("noise_variance_for_isnr: zero signal");
  }
  return energy / (static_cast<double>(spectrum.sparsity()) * std::pow(10.0, isnr_db / 10.0));
}

Eigen::VectorXd restrict_to(const Eigen::VectorXd& v, const Support& support) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(support.size()));
  for (std::size_t i = 0; i < support.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = v[static_cast<Eigen::Index>(support[i])];
  }
  return out;
}

}  // namespace cslab
