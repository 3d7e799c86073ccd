#pragma once
// Newton iteration on the stationarity system F(w; T_k) = 0 with a
// mu-perturbed Jacobian and full steps.

#include <limits>
#include <optional>
#include <vector>

#include "nm01/partition.hpp"
#include "nm01/saddle.hpp"
#include "nm01/stationarity.hpp"
#include "nm01/types.hpp"

namespace nm01 {

struct EpsilonSchedule {
  double eps0 = 0.5;    // smoothing level applied before the first step
  double floor = 1e-6;  // halving stops here
};

struct SolveOptions {
  int max_iters = 1000;
  double tol_F = 1e-4;
  // mu_{-1}; NaN resolves to 0.05 when m < n and 5 otherwise.
  double mu_init = std::numeric_limits<double>::quiet_NaN();
  double rho = 1.0;
  double alpha_factor = 0.5;
  int mu_update_period = 5;
  // NaN resolves to default_eq_tol(tau, lambda).
  double eq_tol = std::numeric_limits<double>::quiet_NaN();
  // When set, the objective's smoothing level is halved once per iteration.
  std::optional<EpsilonSchedule> epsilon_schedule;
};

enum class SolveStatus { Converged, MaxIters, LinearSolveFailure };

struct SolveReport {
  SolveStatus status = SolveStatus::MaxIters;
  PrimalDualPoint w;
  IndexPartition partition;              // at the final iterate
  std::vector<double> residual_history;  // ||F(w^k; T_k)||, one per iterate
  std::vector<double> mu_history;        // mu_k used for each step taken
  int iterations = 0;                    // steps taken
  double wall_seconds = 0.0;
  StationarityCertificate certificate;  // evaluated at 10 * tol_F
  TauBounds tau_diag;
  double objective_value = 0.0;  // f(x) + lambda ||(A x + b)_+||_0
};

// mu_k = min(alpha * mu_prev, rho * ||F||) every mu_update_period iterations,
// unchanged otherwise.
double update_mu(double mu_prev, double normF, int k, const SolveOptions& opts);

struct NewtonDirection {
  Eigen::VectorXd u;  // primal step
  Eigen::VectorXd v;  // multiplier step; -z outside T, saddle solution on T
};

NewtonDirection newton_step(const PrimalDualPoint& w,
                            const IndexPartition& part, double mu,
                            const ProblemInstance& inst);

SolveReport solve(const ProblemInstance& inst, const PrimalDualPoint& w0,
                  const SolveOptions& opts = {});

// Advisory check: a P-stationary point is a global minimizer when f is
// strongly convex with constant c_f and tau >= ||A||^2 / c_f.
bool global_opt_certificate(const ProblemInstance& inst, double c_f);

}  // namespace nm01
