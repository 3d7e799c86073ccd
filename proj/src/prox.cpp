#include "nm01/prox.hpp"

#include <cmath>
#include <stdexcept>

namespace nm01 {

ProxValue prox_scalar(double z, double alpha) {
  if (!std::isfinite(z)) {
    throw std::invalid_argument("prox_scalar: non-finite input");
  }
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    throw std::invalid_argument("prox_scalar: alpha must be positive and finite");
  }
  const double c = std::sqrt(alpha / 2.0);
  const double gap = std::abs(z - c);
  if (gap < c) {
    return {0.0, false, 0.0};
  }
  if (gap > c) {
    return {z, false, z};
  }
  // |z - c| == c: both 0 and z attain the minimum; the canonical value is 0.
  return {0.0, true, z};
}

ProxVectorResult prox_vector(const Eigen::VectorXd& z, double alpha) {
  ProxVectorResult out;
  out.value.resize(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const ProxValue p = prox_scalar(z[i], alpha);
    out.value[i] = p.value;
    if (p.tie) {
      out.tie_indices.push_back(static_cast<int>(i));
    }
  }
  return out;
}

bool subdiff_membership(const Eigen::VectorXd& v, const Eigen::VectorXd& y,
                        double tol) {
  if (v.size() != y.size()) {
    throw std::invalid_argument("subdiff_membership: length mismatch");
  }
  if (!(tol >= 0.0)) {
    throw std::invalid_argument("subdiff_membership: tolerance must be >= 0");
  }
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (std::abs(y[i]) <= tol) {
      if (v[i] < -tol) return false;
    } else if (std::abs(v[i]) > tol) {
      return false;
    }
  }
  return true;
}

}  // namespace nm01
