#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "nm01/stationarity.hpp"

using nm01::PrimalDualPoint;
using nm01::ProblemInstance;

namespace {

// Objective with a prescribed gradient at every point: f(x) = g^T x.
class LinearObjective final : public nm01::ObjectiveModel {
 public:
  explicit LinearObjective(Eigen::VectorXd g) : g_(std::move(g)) {}
  double value(const Eigen::VectorXd& x) const override { return g_.dot(x); }
  Eigen::VectorXd gradient(const Eigen::VectorXd&) const override { return g_; }
  nm01::HessianRep hessian(const Eigen::VectorXd& x) const override {
    return nm01::DiagonalHessian{Eigen::VectorXd::Zero(x.size())};
  }

 private:
  Eigen::VectorXd g_;
};

}  // namespace

TEST_CASE("residual_F hand values") {
  SUBCASE("all blocks zero at the origin") {
    const ProblemInstance inst(
        nm01::quadratic_diag_model(Eigen::VectorXd::Ones(2)),
        Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2), 1.0, 1.0);
    PrimalDualPoint w;
    w.x = Eigen::VectorXd::Zero(2);
    w.z = Eigen::VectorXd::Zero(2);
    const auto res = nm01::residual_F(w, {}, inst);
    CHECK(res.norm == 0.0);
    CHECK(res.grad_block.isZero(0.0));
    CHECK(res.primal_block.size() == 0);
    CHECK(res.dual_block.isZero(0.0));
  }

  SUBCASE("norm sqrt(17) example") {
    // f(x) = x^2, A = (1), b = (0), x = 1, z = 2, T = {0}:
    // grad block 2 + 2 = 4, primal block 1, no dual block.
    const ProblemInstance inst(
        nm01::quadratic_diag_model(Eigen::VectorXd::Ones(1)),
        Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Zero(1), 1.0, 1.0);
    PrimalDualPoint w;
    w.x = Eigen::VectorXd::Constant(1, 1.0);
    w.z = Eigen::VectorXd::Constant(1, 2.0);
    const auto res = nm01::residual_F(w, {0}, inst);
    CHECK(res.grad_block[0] == 4.0);
    CHECK(res.primal_block[0] == 1.0);
    CHECK(res.dual_block.size() == 0);
    CHECK(res.norm == doctest::Approx(std::sqrt(17.0)).epsilon(1e-15));
  }

  SUBCASE("empty T routes z into the dual block") {
    const ProblemInstance inst(
        nm01::quadratic_diag_model(Eigen::VectorXd::Ones(1)),
        Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Zero(1), 1.0, 1.0);
    PrimalDualPoint w;
    w.x = Eigen::VectorXd::Zero(1);
    w.z = Eigen::VectorXd::Constant(1, 3.0);
    const auto res = nm01::residual_F(w, {}, inst);
    CHECK(res.dual_block[0] == 3.0);
    CHECK(res.norm == 3.0);
  }
}

TEST_CASE("p_stationarity_check hand values") {
  // f(x) = x^2, A = (1), b = (-1), tau = lambda = 1.
  const ProblemInstance inst(
      nm01::quadratic_diag_model(Eigen::VectorXd::Ones(1)),
      Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Constant(1, -1.0), 1.0,
      1.0);
  PrimalDualPoint w;
  w.x = Eigen::VectorXd::Zero(1);
  w.z = Eigen::VectorXd::Zero(1);

  auto cert = nm01::p_stationarity_check(w, inst, 1e-9);
  CHECK(cert.stationary);
  CHECK(cert.gradient_ok);
  CHECK(cert.prox_ok);

  w.z[0] = 1.0;  // breaks the gradient condition
  cert = nm01::p_stationarity_check(w, inst, 1e-9);
  CHECK_FALSE(cert.stationary);
  CHECK_FALSE(cert.gradient_ok);
  CHECK(cert.gradient_residual == doctest::Approx(1.0));
}

TEST_CASE("p_stationarity_check flags prox violations") {
  // x = 1 makes y = A x + b = 1 with z = 0: the gradient condition needs
  // z = -2, and y = 1 is strictly inside the zero branch (c = sqrt(0.5)),
  // so the prox condition fails too.
  const ProblemInstance inst(
      nm01::quadratic_diag_model(Eigen::VectorXd::Ones(1)),
      Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Zero(1), 1.0, 1.0);
  PrimalDualPoint w;
  w.x = Eigen::VectorXd::Constant(1, 1.0);
  w.z = Eigen::VectorXd::Zero(1);
  const auto cert = nm01::p_stationarity_check(w, inst, 1e-9);
  CHECK_FALSE(cert.prox_ok);
  CHECK(cert.prox_violation == doctest::Approx(1.0));
}

TEST_CASE("tau_bounds hand values") {
  // y = (2, -1, 0), grad f = (-3, 0), lambda = 1: tau1 = 2, p* = 3,
  // tau2 = 2/9.
  Eigen::MatrixXd A(3, 2);
  A << 0, 0, 0, 0, 1, 0;
  Eigen::VectorXd b(3);
  b << 2, -1, 0;
  Eigen::VectorXd g(2);
  g << -3, 0;
  const ProblemInstance inst(std::make_shared<LinearObjective>(g), A, b, 1.0,
                             1.0);
  PrimalDualPoint w;
  w.x = Eigen::VectorXd::Zero(2);
  w.z = Eigen::VectorXd::Zero(3);

  const auto bounds = nm01::tau_bounds(w, inst);
  CHECK(bounds.tau1 == doctest::Approx(2.0));
  CHECK(bounds.gamma_star == std::vector<int>{2});
  CHECK(bounds.tau2 == doctest::Approx(2.0 / 9.0));
  CHECK(bounds.tau_star == doctest::Approx(2.0 / 9.0));
  CHECK_FALSE(bounds.rank_deficient);
}

TEST_CASE("tau_bounds degenerate cases") {
  const double inf = std::numeric_limits<double>::infinity();

  SUBCASE("no positive rows and empty zero set") {
    const ProblemInstance inst(
        nm01::quadratic_diag_model(Eigen::VectorXd::Ones(1)),
        Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Constant(1, -2.0),
        1.0, 1.0);
    PrimalDualPoint w;
    w.x = Eigen::VectorXd::Zero(1);
    w.z = Eigen::VectorXd::Zero(1);
    const auto bounds = nm01::tau_bounds(w, inst);
    CHECK(bounds.tau1 == inf);
    CHECK(bounds.tau2 == inf);
    CHECK(bounds.tau_star == inf);
    CHECK(bounds.gamma_star.empty());
  }

  SUBCASE("zero gradient maps tau2 to infinity") {
    const ProblemInstance inst(
        nm01::quadratic_diag_model(Eigen::VectorXd::Ones(1)),
        Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Zero(1), 1.0, 1.0);
    PrimalDualPoint w;
    w.x = Eigen::VectorXd::Zero(1);
    w.z = Eigen::VectorXd::Zero(1);
    const auto bounds = nm01::tau_bounds(w, inst);
    CHECK(bounds.gamma_star == std::vector<int>{0});
    CHECK(bounds.tau2 == inf);
  }

  SUBCASE("duplicated zero rows set the rank flag") {
    Eigen::MatrixXd A(2, 2);
    A << 1, 0, 1, 0;
    Eigen::VectorXd g(2);
    g << -3, 0;
    const ProblemInstance inst(std::make_shared<LinearObjective>(g), A,
                               Eigen::VectorXd::Zero(2), 1.0, 1.0);
    PrimalDualPoint w;
    w.x = Eigen::VectorXd::Zero(2);
    w.z = Eigen::VectorXd::Zero(2);
    const auto bounds = nm01::tau_bounds(w, inst);
    CHECK(bounds.rank_deficient);
    // Minimum-norm solution splits the correction across the two copies.
    CHECK(bounds.tau2 == doctest::Approx(2.0 / (1.5 * 1.5)));
  }
}

TEST_CASE("constructed stationary points satisfy both characterisations") {
  std::mt19937_64 eng(2718);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int rep = 0; rep < 50; ++rep) {
    const int m = 4 + static_cast<int>(eng() % 12);
    const int n = 4 + static_cast<int>(eng() % 12);
    const int k = 1 + static_cast<int>(eng() % (std::min(m, n) - 1));
    const double tau = 0.5 + 2.0 * unit(eng);
    const double lambda = 0.5 + 2.0 * unit(eng);

    Eigen::MatrixXd A(m, n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) A(i, j) = gauss(eng);
    }
    Eigen::VectorXd d(n);
    for (int j = 0; j < n; ++j) d[j] = 0.7 + 0.8 * unit(eng);

    PrimalDualPoint w;
    w.z = Eigen::VectorXd::Zero(m);
    const double zmax = std::sqrt(2.0 * lambda / tau);
    for (int i = 0; i < k; ++i) {
      w.z[i] = zmax * (0.05 + 0.9 * unit(eng));
    }
    // grad f(x) = 2 d^2 x must cancel A_G^T z_G.
    const Eigen::VectorXd rhs = A.topRows(k).transpose() * w.z.head(k);
    w.x = -rhs.cwiseQuotient(2.0 * d.cwiseProduct(d));

    const Eigen::VectorXd Ax = A * w.x;
    Eigen::VectorXd b(m);
    b.head(k) = -Ax.head(k);
    for (int i = k; i < m; ++i) {
      const double target = unit(eng) < 0.5
                                ? -(0.5 + unit(eng))
                                : std::sqrt(2.0 * tau * lambda) *
                                      (1.1 + unit(eng));
      b[i] = target - Ax[i];
    }

    const ProblemInstance inst(nm01::quadratic_diag_model(d), A, b, lambda,
                               tau);
    const auto part = nm01::partition_indices(
        w, inst, nm01::default_eq_tol(tau, lambda));
    const auto res = nm01::residual_F(w, part.T, inst);
    CAPTURE(rep);
    CHECK(res.norm <= 1e-10);
    CHECK(nm01::p_stationarity_check(w, inst, 1e-8).stationary);

    // A small push in either block breaks both characterisations.
    PrimalDualPoint bad = w;
    if (rep % 2 == 0) {
      bad.x[static_cast<int>(eng() % n)] += 1e-3;
    } else {
      bad.z[k + static_cast<int>(eng() % (m - k))] += 1e-3;
    }
    const auto bad_part = nm01::partition_indices(
        bad, inst, nm01::default_eq_tol(tau, lambda));
    const auto bad_res = nm01::residual_F(bad, bad_part.T, inst);
    CHECK(bad_res.norm > 1e-10);
    CHECK_FALSE(nm01::p_stationarity_check(bad, inst, 1e-8).stationary);
  }
}
