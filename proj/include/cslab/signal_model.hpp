#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace cslab {

using Support = std::vector<std::size_t>;  // sorted, unique

/// A signal in its sparse basis: B real coefficients, zero off `support`.
class SparseSpectrum {
 public:
  /// Throws std::invalid_argument if the support is unsorted, out of range,
  /// or if a coefficient off the support is nonzero.
  SparseSpectrum(Support support, Eigen::VectorXd coeffs);

  std::size_t ambient_dim() const { return static_cast<std::size_t>(coeffs_.size()); }
  const Support& support() const { return support_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  std::size_t sparsity() const { return support_.size(); }

  bool operator==(const SparseSpectrum& other) const {
    return support_ == other.support_ && coeffs_.size() == other.coeffs_.size() &&
           coeffs_ == other.coeffs_;
  }

 private:
  Support support_;
  Eigen::VectorXd coeffs_;
};

/// Nyquist-rate samples over a unit window.
struct SampleVector {
  Eigen::VectorXd samples;
  double nyquist_rate = 0.0;  // Hz; equals samples.size() for T = 1 s
};

struct NoiseSpec {
  double signal_noise_var = 0.0;
  double measurement_noise_var = 0.0;

  /// Throws std::invalid_argument on a negative variance.
  void validate() const;
};

/// Orthonormal synthesis x = Psi * alpha, so ||x||_2 == ||alpha||_2.
SampleVector synthesize(const SparseSpectrum& spectrum);

/// W contiguous bins of i.i.d. standard normal coefficients. The band starts
/// at `first_bin` when given, otherwise at a uniformly random admissible bin.
SparseSpectrum generate_bandlimited(std::size_t ambient_dim, std::size_t band_width,
                                    std::optional<std::size_t> first_bin,
                                    std::uint64_t seed);

/// Peak-to-average ratio ||x||_inf / (||x||_2 / sqrt(B)). Lies in [1, sqrt(B)].
double par(const Eigen::VectorXd& x);
double par(const SampleVector& x);

/// alpha + n with n i.i.d. N(0, variance) over all B coefficients.
Eigen::VectorXd add_signal_noise(const SparseSpectrum& spectrum, double variance,
                                 std::uint64_t seed);

/// Signal-noise variance that puts the in-band SNR at `isnr_db`:
/// ||alpha||^2 / (W * 10^(isnr_db / 10)).
double noise_variance_for_isnr(const SparseSpectrum& spectrum, double isnr_db);

/// Entries of v on `support`, in support order.
Eigen::VectorXd restrict_to(const Eigen::VectorXd& v, const Support& support);

}  // namespace cslab
