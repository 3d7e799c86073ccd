#pragma once
// Problem data for min f(x) + lambda * ||(A x + b)_+||_0.

#include <Eigen/Core>

#include <memory>

#include "nm01/objectives.hpp"

namespace nm01 {

struct PrimalDualPoint {
  Eigen::VectorXd x;  // primal, length n
  Eigen::VectorXd z;  // multiplier, length m
};

class ProblemInstance {
 public:
  ProblemInstance(std::shared_ptr<ObjectiveModel> objective, Eigen::MatrixXd A,
                  Eigen::VectorXd b, double lambda, double tau);

  const ObjectiveModel& objective() const { return *objective_; }
  const std::shared_ptr<ObjectiveModel>& objective_ptr() const {
    return objective_;
  }
  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::VectorXd& b() const { return b_; }
  double lambda() const { return lambda_; }
  double tau() const { return tau_; }
  int m() const { return static_cast<int>(A_.rows()); }
  int n() const { return static_cast<int>(A_.cols()); }

  Eigen::VectorXd constraint_values(const Eigen::VectorXd& x) const {
    return A_ * x + b_;
  }

  // f(x) + lambda * #{i : (A x + b)_i > 0}
  double objective_value(const Eigen::VectorXd& x) const;

  // Latched when lambda <= min{b_i^2 : b_i > 0} / (2 tau): a penalty that
  // weak admits the trivial stationary point x = 0. The constructor also
  // warns on stderr.
  bool zero_solution_risk() const { return zero_solution_risk_; }

 private:
  std::shared_ptr<ObjectiveModel> objective_;
  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  double lambda_;
  double tau_;
  bool zero_solution_risk_ = false;
};

}  // namespace nm01
