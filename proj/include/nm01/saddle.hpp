#pragma once
// Solver for the mu-perturbed saddle system [[H, A_T^T], [A_T, -mu I]] and a
// power-iteration estimate of the spectral norm.

#include <Eigen/Core>

#include <stdexcept>

#include "nm01/hessian.hpp"

namespace nm01 {

struct SingularSystemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SaddleSolution {
  Eigen::VectorXd u;  // length n
  Eigen::VectorXd v;  // length |T|
  bool used_schur = false;
  bool ridge_retried = false;
};

// Solves [[H, A_T^T], [A_T, -mu I]] (u; v) = (rhs_x; rhs_T) to relative
// residual 1e-10. A diagonal H bounded away from zero takes the
// Schur-complement fast path on the multiplier block; everything else goes
// through the assembled dense system. After one ridge retry a system that
// still misses the residual target raises SingularSystemError.
SaddleSolution solve_saddle(const HessianRep& H, const Eigen::MatrixXd& A_T,
                            double mu, const Eigen::VectorXd& rhs_x,
                            const Eigen::VectorXd& rhs_T);

// Assembled dense route, exposed so tests can cross-check the fast path.
SaddleSolution solve_saddle_dense(const HessianRep& H,
                                  const Eigen::MatrixXd& A_T, double mu,
                                  const Eigen::VectorXd& rhs_x,
                                  const Eigen::VectorXd& rhs_T);

struct SpectralEstimate {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Power iteration on A^T A; returns sigma_1(A) within the relative tolerance
// or the best estimate so far with converged = false.
SpectralEstimate spectral_norm_estimate(const Eigen::MatrixXd& A,
                                        int max_iters = 500, double tol = 1e-6);

}  // namespace nm01
