#include "nm01/partition.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>

namespace nm01 {

double default_eq_tol(double tau, double lambda) {
  return 1e-10 * std::max(1.0, std::sqrt(tau * lambda / 2.0));
}

IndexPartition partition_indices(const PrimalDualPoint& w,
                                 const ProblemInstance& inst, double eq_tol) {
  if (w.x.size() != inst.n() || w.z.size() != inst.m()) {
    throw std::invalid_argument("partition_indices: dimension mismatch");
  }
  if (!(eq_tol >= 0.0)) {
    throw std::invalid_argument("partition_indices: eq_tol must be >= 0");
  }

  IndexPartition part;
  part.eq_tol = eq_tol;
  const double c = std::sqrt(inst.tau() * inst.lambda() / 2.0);
  const Eigen::VectorXd y = inst.constraint_values(w.x);

  for (int i = 0; i < inst.m(); ++i) {
    const double g = y[i] + inst.tau() * w.z[i];
    const double gap = std::abs(g - c);
    if (std::abs(gap - c) <= eq_tol) {
      part.E.push_back(i);
      const double zgap = std::abs(inst.tau() * w.z[i] - c);
      if (std::abs(y[i]) <= eq_tol && std::abs(zgap - c) <= eq_tol) {
        part.Eo.push_back(i);
      }
    } else if (gap < c - eq_tol) {
      part.S.push_back(i);
    } else {
      part.O.push_back(i);
    }
  }

  part.T.reserve(part.S.size() + part.Eo.size());
  std::merge(part.S.begin(), part.S.end(), part.Eo.begin(), part.Eo.end(),
             std::back_inserter(part.T));
  return part;
}

std::vector<int> complement(const std::vector<int>& idx, int m) {
  std::vector<char> mark(static_cast<std::size_t>(m), 0);
  for (int i : idx) {
    if (i < 0 || i >= m) {
      throw std::invalid_argument("complement: index out of range");
    }
    mark[static_cast<std::size_t>(i)] = 1;
  }
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(m) - idx.size());
  for (int i = 0; i < m; ++i) {
    if (!mark[static_cast<std::size_t>(i)]) out.push_back(i);
  }
  return out;
}

}  // namespace nm01
