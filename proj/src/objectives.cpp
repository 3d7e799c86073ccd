#include "nm01/objectives.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace nm01 {

namespace {

class QuadraticDiagModel final : public ObjectiveModel {
 public:
  explicit QuadraticDiagModel(Eigen::VectorXd d) : d2_(d.cwiseProduct(d)) {
    if ((d.array() < 0.0).any()) {
      throw std::invalid_argument("quadratic_diag_model: d must be >= 0");
    }
  }

  double value(const Eigen::VectorXd& x) const override {
    check(x);
    return d2_.cwiseProduct(x).dot(x);
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    check(x);
    return 2.0 * d2_.cwiseProduct(x);
  }

  HessianRep hessian(const Eigen::VectorXd& x) const override {
    check(x);
    return DiagonalHessian{2.0 * d2_};
  }

 private:
  void check(const Eigen::VectorXd& x) const {
    if (x.size() != d2_.size()) {
      throw std::invalid_argument("quadratic_diag_model: dimension mismatch");
    }
  }

  Eigen::VectorXd d2_;
};

class SmoothedLqModel final : public ObjectiveModel {
 public:
  SmoothedLqModel(double q, double eps) : q_(q), eps_(eps) {
    if (!(q > 0.0 && q < 1.0)) {
      throw std::invalid_argument("smoothed_lq_model: q must be in (0, 1)");
    }
    if (!(eps > 0.0)) {
      throw std::invalid_argument("smoothed_lq_model: eps must be > 0");
    }
  }

  double value(const Eigen::VectorXd& x) const override {
    const double e2 = eps_ * eps_;
    return (x.array().square() + e2).pow(q_ / 2.0).sum();
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    const double e2 = eps_ * eps_;
    return (q_ * x.array() * (x.array().square() + e2).pow(q_ / 2.0 - 1.0))
        .matrix();
  }

  HessianRep hessian(const Eigen::VectorXd& x) const override {
    const double e2 = eps_ * eps_;
    const Eigen::ArrayXd t = x.array().square() + e2;
    // h_ii = q (x_i^2 + eps^2)^(q/2 - 2) ((q - 1) x_i^2 + eps^2); negative
    // once x_i^2 dominates, so the representation may be indefinite.
    Eigen::VectorXd h =
        (q_ * t.pow(q_ / 2.0 - 2.0) * ((q_ - 1.0) * x.array().square() + e2))
            .matrix();
    return DiagonalHessian{std::move(h)};
  }

  void set_smoothing(double eps) const override {
    eps_ = std::max(eps, kSmoothingFloor);
  }

  double smoothing() const override { return eps_; }

 private:
  double q_;
  mutable double eps_;
};

}  // namespace

std::shared_ptr<ObjectiveModel> quadratic_diag_model(const Eigen::VectorXd& d) {
  return std::make_shared<QuadraticDiagModel>(d);
}

std::shared_ptr<ObjectiveModel> smoothed_lq_model(double q, double eps) {
  return std::make_shared<SmoothedLqModel>(q, eps);
}

FiniteDiffReport finite_diff_check(const ObjectiveModel& model,
                                   const Eigen::VectorXd& x, double h) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("finite_diff_check: step must be > 0");
  }
  FiniteDiffReport report;
  const Eigen::VectorXd g = model.gradient(x);
  const Eigen::VectorXd hd = hessian_diagonal(model.hessian(x));
  Eigen::VectorXd xp = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + h;
    const double f_plus = model.value(xp);
    const Eigen::VectorXd g_plus = model.gradient(xp);
    xp[i] = x[i] - h;
    const double f_minus = model.value(xp);
    const Eigen::VectorXd g_minus = model.gradient(xp);
    xp[i] = x[i];

    const double g_fd = (f_plus - f_minus) / (2.0 * h);
    const double h_fd = (g_plus[i] - g_minus[i]) / (2.0 * h);
    report.gradient_error =
        std::max(report.gradient_error,
                 std::abs(g_fd - g[i]) / std::max(1.0, std::abs(g[i])));
    report.hessian_error =
        std::max(report.hessian_error,
                 std::abs(h_fd - hd[i]) / std::max(1.0, std::abs(hd[i])));
  }
  return report;
}

}  // namespace nm01
