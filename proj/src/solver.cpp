#include "nm01/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace nm01 {

double update_mu(double mu_prev, double normF, int k, const SolveOptions& opts) {
  if (opts.mu_update_period < 1) {
    throw std::invalid_argument("update_mu: period must be >= 1");
  }
  if (k % opts.mu_update_period != 0) return mu_prev;
  return std::min(opts.alpha_factor * mu_prev, opts.rho * normF);
}

NewtonDirection newton_step(const PrimalDualPoint& w,
                            const IndexPartition& part, double mu,
                            const ProblemInstance& inst) {
  NewtonDirection d;
  d.v = -w.z;  // rows outside T zero their multiplier exactly

  const Eigen::VectorXd grad = inst.objective().gradient(w.x);
  const HessianRep H = inst.objective().hessian(w.x);

  if (part.T.empty()) {
    const Eigen::MatrixXd empty(0, inst.n());
    const auto sol =
        solve_saddle(H, empty, mu, -grad, Eigen::VectorXd::Zero(0));
    d.u = sol.u;
    return d;
  }

  const Eigen::MatrixXd A_T = inst.A()(part.T, Eigen::all);
  const Eigen::VectorXd z_T = w.z(part.T);
  const Eigen::VectorXd rhs_x = -(grad + A_T.transpose() * z_T);
  const Eigen::VectorXd rhs_T = -(A_T * w.x + inst.b()(part.T));
  const auto sol = solve_saddle(H, A_T, mu, rhs_x, rhs_T);
  d.u = sol.u;
  for (std::size_t j = 0; j < part.T.size(); ++j) {
    d.v[part.T[j]] = sol.v[static_cast<Eigen::Index>(j)];
  }
  return d;
}

SolveReport solve(const ProblemInstance& inst, const PrimalDualPoint& w0,
                  const SolveOptions& opts) {
  if (w0.x.size() != inst.n() || w0.z.size() != inst.m()) {
    throw std::invalid_argument("solve: w0 dimension mismatch");
  }
  if (!w0.x.allFinite() || !w0.z.allFinite()) {
    throw std::invalid_argument("solve: w0 must be finite");
  }
  if (opts.max_iters < 0 || !(opts.tol_F > 0.0)) {
    throw std::invalid_argument("solve: bad stopping parameters");
  }

  const auto t0 = std::chrono::steady_clock::now();

  const double eq_tol = std::isnan(opts.eq_tol)
                            ? default_eq_tol(inst.tau(), inst.lambda())
                            : opts.eq_tol;
  double mu = std::isnan(opts.mu_init) ? (inst.m() < inst.n() ? 0.05 : 5.0)
                                       : opts.mu_init;
  double eps = 0.0;
  if (opts.epsilon_schedule) {
    eps = opts.epsilon_schedule->eps0;
    inst.objective().set_smoothing(eps);
  }

  SolveReport report;
  report.w = w0;

  IndexPartition part = partition_indices(report.w, inst, eq_tol);
  StationarityResidual F = residual_F(report.w, part.T, inst);
  report.residual_history.push_back(F.norm);

  int k = 0;
  for (;;) {
    if (F.norm < opts.tol_F) {
      report.status = SolveStatus::Converged;
      break;
    }
    if (k >= opts.max_iters) {
      report.status = SolveStatus::MaxIters;
      break;
    }

    mu = update_mu(mu, F.norm, k, opts);

    NewtonDirection d;
    try {
      d = newton_step(report.w, part, mu, inst);
    } catch (const SingularSystemError&) {
      report.status = SolveStatus::LinearSolveFailure;
      break;
    }
    report.mu_history.push_back(mu);
    report.w.x += d.u;
    report.w.z += d.v;
    ++k;

    if (opts.epsilon_schedule) {
      eps = std::max(eps / 2.0, opts.epsilon_schedule->floor);
      inst.objective().set_smoothing(eps);
    }

    part = partition_indices(report.w, inst, eq_tol);
    F = residual_F(report.w, part.T, inst);
    report.residual_history.push_back(F.norm);
  }

  report.iterations = k;
  report.partition = std::move(part);
  report.certificate = p_stationarity_check(report.w, inst, 10.0 * opts.tol_F);
  report.tau_diag = tau_bounds(report.w, inst);
  report.objective_value = inst.objective_value(report.w.x);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

bool global_opt_certificate(const ProblemInstance& inst, double c_f) {
  if (!(c_f > 0.0)) {
    throw std::invalid_argument("global_opt_certificate: c_f must be > 0");
  }
  const SpectralEstimate est = spectral_norm_estimate(inst.A());
  return inst.tau() >= est.value * est.value / c_f;
}

}  // namespace nm01
