#pragma once
// Stationarity residual F(w;T), the P-stationarity certificate, and the
// tau_1/tau_2 stepsize bounds.

#include <vector>

#include "nm01/partition.hpp"
#include "nm01/types.hpp"

namespace nm01 {

struct StationarityResidual {
  Eigen::VectorXd grad_block;    // grad f(x) + A_T^T z_T
  Eigen::VectorXd primal_block;  // A_T x + b_T
  Eigen::VectorXd dual_block;    // z on the complement of T
  double norm = 0.0;
};

StationarityResidual residual_F(const PrimalDualPoint& w,
                                const std::vector<int>& T,
                                const ProblemInstance& inst);

struct StationarityCertificate {
  bool stationary = false;
  bool gradient_ok = false;  // ||grad f(x) + A^T z|| <= tol
  bool prox_ok = false;      // A x + b is a prox fixed point within tol
  double gradient_residual = 0.0;
  double prox_violation = 0.0;  // worst componentwise inclusion gap
  double tol = 0.0;
};

// Definition of a P-stationary point, tested with tolerance slack on both
// conditions; rows within tol of the prox tie boundary may take either branch.
StationarityCertificate p_stationarity_check(const PrimalDualPoint& w,
                                             const ProblemInstance& inst,
                                             double tol);

struct TauBounds {
  double tau1 = 0.0;
  double tau2 = 0.0;
  double tau_star = 0.0;        // min(tau1, tau2)
  std::vector<int> gamma_star;  // rows with |A_i x + b_i| <= zero_tol
  bool rank_deficient = false;  // A restricted to gamma_star lost row rank
};

// tau1 = min over positive y_i of y_i^2 / (2 lambda); tau2 = 2 lambda divided
// by the largest squared entry of p* = -(A_G A_G^T)^-1 A_G grad f(x) on the
// zero set G. Degenerate cases (no positive rows, empty G, p* = 0) map to
// +infinity; a rank-deficient A_G falls back to the least-squares solution
// and sets the flag.
TauBounds tau_bounds(const PrimalDualPoint& w, const ProblemInstance& inst,
                     double zero_tol = 1e-8);

}  // namespace nm01
