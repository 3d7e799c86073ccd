#pragma once
// Proximal operator of alpha*||(.)_+||_0 and the subdifferential membership
// test for ||(.)_+||_0.

#include <Eigen/Core>

#include <vector>

namespace nm01 {

// Result of the scalar prox. On a tie both 0 and the input attain the
// minimum; the canonical value is 0 and the competing input is `alternate`.
struct ProxValue {
  double value = 0.0;
  bool tie = false;
  double alternate = 0.0;
};

ProxValue prox_scalar(double z, double alpha);

struct ProxVectorResult {
  Eigen::VectorXd value;
  std::vector<int> tie_indices;  // sorted, 0-based
};

ProxVectorResult prox_vector(const Eigen::VectorXd& z, double alpha);

// v lies in the subdifferential of ||(.)_+||_0 at y iff v_i >= 0 wherever
// y_i = 0 and v_i = 0 elsewhere, tested with an absolute tolerance.
bool subdiff_membership(const Eigen::VectorXd& v, const Eigen::VectorXd& y,
                        double tol);

}  // namespace nm01
