#pragma once
// Row partition S/E/O at a primal-dual point and the active set T = S u E0
// that selects the working block of the stationarity system.

#include <vector>

#include "nm01/types.hpp"

namespace nm01 {

struct IndexPartition {
  std::vector<int> S;   // strictly inside the zero branch of the prox
  std::vector<int> E;   // on the boundary, within eq_tol
  std::vector<int> O;   // strictly outside
  std::vector<int> Eo;  // boundary rows that already sit at y_i = 0
  std::vector<int> T;   // S u Eo
  double eq_tol = 0.0;
};

// 1e-10 * max(1, sqrt(tau*lambda/2)): absolute comparisons scale with the
// prox radius once it exceeds 1.
double default_eq_tol(double tau, double lambda);

// With y = A x + b, c = sqrt(tau*lambda/2) and g_i = y_i + tau z_i:
//   S:  |g_i - c| <  c - eq_tol
//   E:  ||g_i - c| - c| <= eq_tol
//   O:  otherwise
//   E0: i in E with |y_i| <= eq_tol and ||tau z_i - c| - c| <= eq_tol
IndexPartition partition_indices(const PrimalDualPoint& w,
                                 const ProblemInstance& inst, double eq_tol);

std::vector<int> complement(const std::vector<int>& idx, int m);

}  // namespace nm01
