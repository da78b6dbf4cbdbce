#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "cslab/errors.hpp"
#include "cslab/signal_model.hpp"

namespace cslab {

enum class Distribution {
  gaussian,    // i.i.d. N(0, 1/M)
  rademacher,  // i.i.d. +-1/sqrt(M)
  // sqrt(rho) * S * Psi * D2 * Psi * D1: random signs D1, D2, the orthonormal
  // trigonometric basis Psi and a random choice S of M output samples. Rows
  // are exactly orthogonal with norm sqrt(rho); apply costs O(B log B).
  randomized_orthogonal,
};

std::string_view to_string(Distribution d);
Distribution distribution_from_string(std::string_view name);

/// The M x B matrix R that maps coefficients alpha to measurements y = R alpha.
///
/// Dense ensembles store R. The randomized orthogonal ensemble stores only its
/// signs and row selection and materializes columns on demand.
class MeasurementEnsemble {
 public:
  /// Wraps an explicit matrix. Requires rows <= cols.
  MeasurementEnsemble(Eigen::MatrixXd matrix, Distribution distribution, bool row_orthogonalized);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double subsampling() const { return static_cast<double>(cols_) / static_cast<double>(rows_); }
  Distribution distribution() const { return distribution_; }
  bool row_orthogonalized() const { return row_orthogonalized_; }
  double row_norm_target() const;
  bool is_dense() const { return std::holds_alternative<Eigen::MatrixXd>(rep_); }

  /// R * v. Throws std::invalid_argument on a length mismatch.
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
  /// R^T * r.
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& r) const;
  /// R restricted to the given column indices (M x |support|).
  Eigen::MatrixXd columns(const Support& support) const;
  /// Explicit M x B matrix.
  Eigen::MatrixXd dense() const;
  /// Stored matrix of a dense ensemble; throws std::logic_error otherwise.
  const Eigen::MatrixXd& matrix() const;

 private:
  struct Structured {
    std::vector<std::size_t> selected;  // sorted sample indices, size M
    Eigen::VectorXd inner_signs;        // D1
    Eigen::VectorXd outer_signs;        // D2
  };

  MeasurementEnsemble(Structured s, std::size_t rows, std::size_t cols);

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Distribution distribution_ = Distribution::gaussian;
  bool row_orthogonalized_ = false;
  std::variant<Eigen::MatrixXd, Structured> rep_;

  friend MeasurementEnsemble generate_ensemble(std::size_t, std::size_t, Distribution,
                                               std::uint64_t);
};

/// Draws an M x B ensemble. Dense entries have variance 1/M so columns have
/// unit norm in expectation. Throws std::invalid_argument unless 1 <= M <= B.
MeasurementEnsemble generate_ensemble(std::size_t rows, std::size_t cols, Distribution distribution,
                                      std::uint64_t seed);

/// Returns sqrt(rho) * V^T from the reduced SVD R = U S V^T: same row space,
/// rows orthogonal with norm sqrt(rho). Throws RankDeficientError when some
/// singular value is below 1e-10 * s_max. Already-orthogonal structured
/// ensembles are returned unchanged.
MeasurementEnsemble orthogonalize_rows(const MeasurementEnsemble& ensemble);

/// R * coeffs + e with e i.i.d. N(0, noise_var).
Eigen::VectorXd measure(const MeasurementEnsemble& ensemble, const Eigen::VectorXd& coeffs,
                        double noise_var, std::uint64_t seed);

struct RipMode {
  enum class Kind { exhaustive, sampled };
  Kind kind = Kind::exhaustive;
  std::size_t n_supports = 0;  // sampled mode only

  static RipMode exhaustive() { return {Kind::exhaustive, 0}; }
  static RipMode sampled(std::size_t n) { return {Kind::sampled, n}; }
};

struct RipEstimate {
  double delta = 0.0;
  std::size_t supports_visited = 0;
  bool exhaustive = false;  // false means delta is a lower bound
  Support worst_support;
};

/// Largest limit on C(B, W) for which exhaustive enumeration is accepted.
inline constexpr double kMaxExhaustiveSupports = 1e6;

/// Empirical order-W restricted isometry constant:
/// max over visited supports of max(1 - s_min^2, s_max^2 - 1).
RipEstimate estimate_rip_constant(const MeasurementEnsemble& ensemble, std::size_t sparsity,
                                  RipMode mode, std::uint64_t seed, unsigned workers = 1);

/// Number of W-subsets of a B-set, as a double (may be huge).
double binomial(std::size_t n, std::size_t k);

}  // namespace cslab
