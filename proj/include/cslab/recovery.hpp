#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "cslab/errors.hpp"
#include "cslab/sensing.hpp"
#include "cslab/signal_model.hpp"

namespace cslab {

struct RecoveryOutput {
  Eigen::VectorXd coeffs_hat;  // length B, zero off support_hat
  Support support_hat;
  std::size_t iterations = 0;  // CoSaMP only
  bool converged = true;
  std::vector<double> residual_norms;  // CoSaMP only: ||y||, then one per accepted pass
};

/// Least squares restricted to `support`: coeffs_hat on the support is
/// R_support^+ y. Throws RankDeficientError when R_support is not full column
/// rank (including |support| > M).
RecoveryOutput oracle_recover(const MeasurementEnsemble& ensemble, const Eigen::VectorXd& y,
                              const Support& support);

struct CosampOptions {
  std::size_t max_iter = 50;
  double tol = 1e-6;  // relative change of the residual norm
};

/// CoSaMP with a known sparsity. Each pass merges the 2W largest proxy
/// entries with the current support, solves least squares there, keeps the
/// W largest and recomputes the residual. A step that would increase the
/// residual is rejected and ends the run unconverged; so does a rank-deficient
/// candidate set. The coefficients are refit by least squares on the final
/// support, so a run that finds the true support returns the oracle estimate.
/// For nonzero y the returned support has exactly W entries.
RecoveryOutput cosamp(const MeasurementEnsemble& ensemble, const Eigen::VectorXd& y,
                      std::size_t sparsity, const CosampOptions& options = {});

/// Uniform decimation benchmark. Keeps every rho-th sample, analyzes the
/// M = B / rho samples in the M-point trigonometric basis and reads each
/// support bin at the bin its frequency folds onto, undoing the basis
/// amplitude change (sqrt(rho) between two cosine or sine bins). Folding
/// mirrors frequencies above M/2 and flips the sign of sine terms.
/// Throws std::invalid_argument unless rho divides B, and AliasCollisionError
/// when two support bins land on one bin or a sine bin folds onto DC or
/// Nyquist.
RecoveryOutput bandpass_baseline(const SampleVector& x, std::size_t rho, const Support& support);

}  // namespace cslab
