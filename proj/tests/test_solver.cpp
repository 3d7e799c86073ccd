#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "nm01/objectives.hpp"
#include "nm01/solver.hpp"

namespace {

// Constant-gradient objective with a zero Hessian, for failure-path tests.
class LinearObjective final : public nm01::ObjectiveModel {
 public:
  explicit LinearObjective(Eigen::VectorXd g) : g_(std::move(g)) {}
  double value(const Eigen::VectorXd& x) const override { return g_.dot(x); }
  Eigen::VectorXd gradient(const Eigen::VectorXd&) const override {
    return g_;
  }
  nm01::HessianRep hessian(const Eigen::VectorXd&) const override {
    return nm01::DiagonalHessian{Eigen::VectorXd::Zero(g_.size())};
  }

 private:
  Eigen::VectorXd g_;
};

nm01::ProblemInstance one_dim_instance(double lambda = 1.0, double tau = 1.0) {
  Eigen::MatrixXd A(1, 1);
  A << 1.0;
  return nm01::ProblemInstance(nm01::quadratic_diag_model(
                                   Eigen::VectorXd::Ones(1)),
                               A, Eigen::VectorXd::Constant(1, -1.0), lambda,
                               tau);
}

}  // namespace

TEST_CASE("update_mu follows the periodic min rule") {
  nm01::SolveOptions opts;  // period 5, alpha 0.5, rho 1
  CHECK(nm01::update_mu(5.0, 1.0, 0, opts) == 1.0);
  CHECK(nm01::update_mu(5.0, 100.0, 0, opts) == 2.5);
  for (int k = 1; k < 5; ++k) {
    CHECK(nm01::update_mu(1.7, 0.01, k, opts) == 1.7);
  }
  CHECK(nm01::update_mu(1.7, 0.01, 5, opts) == 0.01);

  opts.rho = 2.0;
  opts.alpha_factor = 0.25;
  CHECK(nm01::update_mu(4.0, 0.3, 10, opts) == doctest::Approx(0.6));

  opts.mu_update_period = 0;
  CHECK_THROWS_AS(nm01::update_mu(1.0, 1.0, 0, opts), std::invalid_argument);
}

TEST_CASE("solve traces the one-dimensional hand example") {
  // f(x) = x^2, single row x - 1 <= threshold structure, lambda = tau = 1.
  // From (x, z) = (0, 1): the first partition puts the row on the boundary
  // but outside the active set, one full step zeroes z, and the zero residual
  // certifies x = 0.
  const auto inst = one_dim_instance();
  nm01::PrimalDualPoint w0{Eigen::VectorXd::Zero(1),
                           Eigen::VectorXd::Ones(1)};
  const auto report = nm01::solve(inst, w0);

  CHECK(report.status == nm01::SolveStatus::Converged);
  CHECK(report.iterations == 1);
  REQUIRE(report.residual_history.size() == 2);
  CHECK(report.residual_history[0] == 1.0);
  CHECK(report.residual_history[1] == 0.0);
  REQUIRE(report.mu_history.size() == 1);
  // m >= n selects mu_{-1} = 5, so mu_0 = min(2.5, ||F_0||) = 1.
  CHECK(report.mu_history[0] == 1.0);
  CHECK(report.w.x[0] == 0.0);
  CHECK(report.w.z[0] == 0.0);
  CHECK(report.objective_value == 0.0);
  CHECK(report.certificate.stationary);
  CHECK(report.certificate.gradient_ok);
  CHECK(report.certificate.prox_ok);
  // Final y = -1: no positive rows and no near-zero rows.
  CHECK(std::isinf(report.tau_diag.tau1));
  CHECK(std::isinf(report.tau_diag.tau2));
  CHECK(report.tau_diag.gamma_star.empty());
  CHECK(report.wall_seconds >= 0.0);
}

TEST_CASE("solve picks the wide-problem mu seed when m < n") {
  Eigen::MatrixXd A(1, 2);
  A << 1.0, 0.0;
  const nm01::ProblemInstance inst(
      nm01::quadratic_diag_model(Eigen::VectorXd::Ones(2)), A,
      Eigen::VectorXd::Constant(1, -1.0), 1.0, 1.0);
  nm01::PrimalDualPoint w0{Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(1)};

  auto report = nm01::solve(inst, w0);
  REQUIRE(report.mu_history.size() == 1);
  // mu_{-1} = 0.05, so mu_0 = min(0.025, ||F_0||) = 0.025.
  CHECK(report.mu_history[0] == 0.025);

  nm01::SolveOptions opts;
  opts.mu_init = 0.001;
  report = nm01::solve(inst, w0, opts);
  REQUIRE(!report.mu_history.empty());
  CHECK(report.mu_history[0] == 0.0005);
}

TEST_CASE("solve halves the smoothing level once per step") {
  Eigen::MatrixXd A = -Eigen::MatrixXd::Identity(2, 2);
  const auto model = nm01::smoothed_lq_model(0.5, 0.37);
  const nm01::ProblemInstance inst(model, A,
                                   Eigen::VectorXd::Constant(2, 0.05), 1.0,
                                   1.0);
  nm01::PrimalDualPoint w0{Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(2)};

  nm01::SolveOptions opts;
  opts.max_iters = 4;
  opts.tol_F = 1e-300;
  opts.epsilon_schedule = nm01::EpsilonSchedule{0.5, 0.2};
  const auto report = nm01::solve(inst, w0, opts);

  // The schedule overrides the model's own eps, then halves after each step
  // down to the floor.
  const double expect =
      std::max(0.5 / std::pow(2.0, report.iterations), 0.2);
  CHECK(model->smoothing() == doctest::Approx(expect).epsilon(1e-15));
  CHECK(report.iterations >= 1);
  CHECK(report.residual_history.size() ==
        static_cast<std::size_t>(report.iterations) + 1);
  CHECK(report.mu_history.size() ==
        static_cast<std::size_t>(report.iterations));
}

TEST_CASE("solve reports a linear-solve failure instead of throwing") {
  // Zero Hessian with an inactive working set leaves an unsolvable primal
  // block: 0 * u = -grad f.
  auto grad = Eigen::VectorXd::Ones(1);
  Eigen::MatrixXd A(1, 1);
  A << 1.0;
  const nm01::ProblemInstance inst(std::make_shared<LinearObjective>(grad), A,
                                   Eigen::VectorXd::Constant(1, -10.0), 1.0,
                                   1.0);
  nm01::PrimalDualPoint w0{Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1)};
  const auto report = nm01::solve(inst, w0);
  CHECK(report.status == nm01::SolveStatus::LinearSolveFailure);
}

TEST_CASE("solve validates the starting point and options") {
  const auto inst = one_dim_instance();
  nm01::PrimalDualPoint good{Eigen::VectorXd::Zero(1),
                             Eigen::VectorXd::Ones(1)};

  nm01::PrimalDualPoint bad_dim{Eigen::VectorXd::Zero(2),
                                Eigen::VectorXd::Ones(1)};
  CHECK_THROWS_AS(nm01::solve(inst, bad_dim), std::invalid_argument);

  nm01::PrimalDualPoint bad_val = good;
  bad_val.z[0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(nm01::solve(inst, bad_val), std::invalid_argument);

  nm01::SolveOptions opts;
  opts.max_iters = -1;
  CHECK_THROWS_AS(nm01::solve(inst, good, opts), std::invalid_argument);
  opts.max_iters = 10;
  opts.tol_F = 0.0;
  CHECK_THROWS_AS(nm01::solve(inst, good, opts), std::invalid_argument);
}

TEST_CASE("solve report invariants on random instances") {
  std::mt19937_64 eng(11);
  std::normal_distribution<double> gauss;

  for (int rep = 0; rep < 25; ++rep) {
    const int m = 3 + static_cast<int>(eng() % 10);
    const int n = 2 + static_cast<int>(eng() % 6);
    Eigen::MatrixXd A(m, n);
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) {
      b[i] = gauss(eng);
      for (int j = 0; j < n; ++j) A(i, j) = gauss(eng);
    }
    const nm01::ProblemInstance inst(
        nm01::quadratic_diag_model(Eigen::VectorXd::Ones(n)), A, b, 0.8, 1.0);
    nm01::PrimalDualPoint w0{Eigen::VectorXd::Zero(n),
                             Eigen::VectorXd::Ones(m)};
    nm01::SolveOptions opts;
    opts.max_iters = 200;
    const auto report = nm01::solve(inst, w0, opts);

    CAPTURE(rep);
    CHECK(report.residual_history.size() ==
          static_cast<std::size_t>(report.iterations) + 1);
    CHECK(report.mu_history.size() ==
          static_cast<std::size_t>(report.iterations));
    if (report.status == nm01::SolveStatus::Converged) {
      CHECK(report.residual_history.back() < opts.tol_F);
    }
    CHECK(report.objective_value ==
          doctest::Approx(inst.objective_value(report.w.x)));

    // The reported partition belongs to the final iterate.
    const auto part = nm01::partition_indices(
        report.w, inst, nm01::default_eq_tol(inst.tau(), inst.lambda()));
    CHECK(part.T == report.partition.T);
    CHECK(part.S == report.partition.S);
    CHECK(part.E == report.partition.E);
  }
}

TEST_CASE("global optimality certificate compares tau against the spectrum") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
  A(0, 0) = 3.0;
  A(1, 1) = 1.0;
  const auto model = nm01::quadratic_diag_model(Eigen::VectorXd::Ones(2));
  const Eigen::VectorXd b = Eigen::VectorXd::Zero(2);

  // f = ||x||^2 is strongly convex with c_f = 2; the cutoff is 9 / 2 = 4.5.
  const nm01::ProblemInstance loose(model, A, b, 1.0, 5.0);
  CHECK(nm01::global_opt_certificate(loose, 2.0));
  const nm01::ProblemInstance tight(model, A, b, 1.0, 4.0);
  CHECK_FALSE(nm01::global_opt_certificate(tight, 2.0));
  CHECK_THROWS_AS(nm01::global_opt_certificate(loose, 0.0),
                  std::invalid_argument);
}
