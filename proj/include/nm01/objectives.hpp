#pragma once
// Smooth objective models f with value/gradient/Hessian access and a
// finite-difference verifier. Models are immutable apart from the lq
// smoothing level.

#include <Eigen/Core>

#include <memory>

#include "nm01/hessian.hpp"

namespace nm01 {

class ObjectiveModel {
 public:
  virtual ~ObjectiveModel() = default;
  virtual double value(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd gradient(const Eigen::VectorXd& x) const = 0;
  virtual HessianRep hessian(const Eigen::VectorXd& x) const = 0;

  // Smoothing slot used by the lq continuation; models without a smoothing
  // parameter ignore writes and report 0.
  virtual void set_smoothing(double) const {}
  virtual double smoothing() const { return 0.0; }
};

// f(x) = ||Dx||^2 with D = diag(d), d_i >= 0.
std::shared_ptr<ObjectiveModel> quadratic_diag_model(const Eigen::VectorXd& d);

constexpr double kSmoothingFloor = 1e-6;

// f(x) = sum_i (x_i^2 + eps^2)^(q/2) with 0 < q < 1, eps > 0. set_smoothing
// clamps at kSmoothingFloor.
std::shared_ptr<ObjectiveModel> smoothed_lq_model(double q, double eps);

struct FiniteDiffReport {
  double gradient_error = 0.0;  // worst relative error over coordinates
  double hessian_error = 0.0;   // same for the Hessian diagonal
};

// Central differences with step h against the model's own derivatives.
FiniteDiffReport finite_diff_check(const ObjectiveModel& model,
                                   const Eigen::VectorXd& x, double h);

}  // namespace nm01
