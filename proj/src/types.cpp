#include "nm01/types.hpp"

#include <iostream>
#include <limits>
#include <stdexcept>
#include <utility>

namespace nm01 {

ProblemInstance::ProblemInstance(std::shared_ptr<ObjectiveModel> objective,
                                 Eigen::MatrixXd A, Eigen::VectorXd b,
                                 double lambda, double tau)
    : objective_(std::move(objective)),
      A_(std::move(A)),
      b_(std::move(b)),
      lambda_(lambda),
      tau_(tau) {
  if (!objective_) {
    throw std::invalid_argument("ProblemInstance: objective must be set");
  }
  if (A_.rows() != b_.size()) {
    throw std::invalid_argument("ProblemInstance: A and b row mismatch");
  }
  if (A_.rows() < 1 || A_.cols() < 1) {
    throw std::invalid_argument("ProblemInstance: A must be nonempty");
  }
  if (!(lambda_ > 0.0) || !(tau_ > 0.0)) {
    throw std::invalid_argument("ProblemInstance: lambda and tau must be > 0");
  }

  double threshold = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < b_.size(); ++i) {
    if (b_[i] > 0.0) {
      threshold = std::min(threshold, b_[i] * b_[i] / (2.0 * tau_));
    }
  }
  if (std::isfinite(threshold) && lambda_ <= threshold) {
    zero_solution_risk_ = true;
    std::cerr << "nm01: warning: lambda <= min{b_i^2 : b_i > 0}/(2 tau); the "
                 "trivial solution x = 0 is admitted\n";
  }
}

double ProblemInstance::objective_value(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd y = constraint_values(x);
  const double positives = static_cast<double>((y.array() > 0.0).count());
  return objective_->value(x) + lambda_ * positives;
}

}  // namespace nm01
