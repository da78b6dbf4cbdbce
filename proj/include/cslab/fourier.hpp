#pragma once

#include <cstddef>

#include <Eigen/Dense>

// Real orthonormal trigonometric basis of R^B.
//
// Coefficient layout for dimension B:
//   index 0                 DC            1/sqrt(B)
//   index 2j-1, 2j          cos/sin pair  sqrt(2/B) cos(2 pi j n / B), sqrt(2/B) sin(...)
//                           for j = 1 .. (B-1)/2
//   index B-1 (B even only) Nyquist       (-1)^n / sqrt(B)
//
// A contiguous run of coefficient indices is therefore a contiguous band of
// frequencies. Synthesis and analysis are exact inverses and preserve the
// Euclidean norm.
namespace cslab::fourier {

enum class BinKind { dc, cosine, sine, nyquist };

struct BinInfo {
  BinKind kind;
  std::size_t frequency;  // cycles per window
};

BinInfo bin_info(std::size_t dim, std::size_t index);

/// Inverse of bin_info. Throws std::invalid_argument for pairs that do not
/// exist at this dimension (e.g. a sine at DC).
std::size_t bin_index(std::size_t dim, BinKind kind, std::size_t frequency);

/// Samples x = Psi * coeffs.
Eigen::VectorXd synthesize(const Eigen::VectorXd& coeffs);

/// Coefficients Psi^T * samples.
Eigen::VectorXd analyze(const Eigen::VectorXd& samples);

}  // namespace cslab::fourier
