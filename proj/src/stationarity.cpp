#include "nm01/stationarity.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nm01 {

StationarityResidual residual_F(const PrimalDualPoint& w,
                                const std::vector<int>& T,
                                const ProblemInstance& inst) {
  if (w.x.size() != inst.n() || w.z.size() != inst.m()) {
    throw std::invalid_argument("residual_F: dimension mismatch");
  }
  StationarityResidual res;
  const std::vector<int> Tc = complement(T, inst.m());

  res.grad_block = inst.objective().gradient(w.x);
  if (!T.empty()) {
    const Eigen::MatrixXd A_T = inst.A()(T, Eigen::all);
    const Eigen::VectorXd z_T = w.z(T);
    res.grad_block += A_T.transpose() * z_T;
    res.primal_block = A_T * w.x + inst.b()(T);
  } else {
    res.primal_block.resize(0);
  }
  res.dual_block = w.z(Tc);

  res.norm = std::sqrt(res.grad_block.squaredNorm() +
                       res.primal_block.squaredNorm() +
                       res.dual_block.squaredNorm());
  return res;
}

StationarityCertificate p_stationarity_check(const PrimalDualPoint& w,
                                             const ProblemInstance& inst,
                                             double tol) {
  if (w.x.size() != inst.n() || w.z.size() != inst.m()) {
    throw std::invalid_argument("p_stationarity_check: dimension mismatch");
  }
  if (!(tol >= 0.0)) {
    throw std::invalid_argument("p_stationarity_check: tol must be >= 0");
  }

  StationarityCertificate cert;
  cert.tol = tol;
  cert.gradient_residual =
      (inst.objective().gradient(w.x) + inst.A().transpose() * w.z).norm();
  cert.gradient_ok = cert.gradient_residual <= tol;

  const double c = std::sqrt(inst.tau() * inst.lambda() / 2.0);
  const Eigen::VectorXd y = inst.constraint_values(w.x);
  double violation = 0.0;
  for (int i = 0; i < inst.m(); ++i) {
    const double g = y[i] + inst.tau() * w.z[i];
    const double gap = std::abs(g - c);
    const double keep_gap = std::abs(y[i] - g);  // |tau z_i|
    double vi;
    if (gap < c - tol) {
      vi = std::abs(y[i]);  // prox value is 0
    } else if (gap > c + tol) {
      vi = keep_gap;  // prox keeps the input
    } else {
      vi = std::min(std::abs(y[i]), keep_gap);  // tie: either branch
    }
    violation = std::max(violation, vi);
  }
  cert.prox_violation = violation;
  cert.prox_ok = violation <= tol;
  cert.stationary = cert.gradient_ok && cert.prox_ok;
  return cert;
}

TauBounds tau_bounds(const PrimalDualPoint& w, const ProblemInstance& inst,
                     double zero_tol) {
  if (w.x.size() != inst.n()) {
    throw std::invalid_argument("tau_bounds: dimension mismatch");
  }
  if (!(zero_tol >= 0.0)) {
    throw std::invalid_argument("tau_bounds: zero_tol must be >= 0");
  }

  TauBounds out;
  const double inf = std::numeric_limits<double>::infinity();
  const Eigen::VectorXd y = inst.constraint_values(w.x);

  out.tau1 = inf;
  for (int i = 0; i < inst.m(); ++i) {
    if (y[i] > zero_tol) {
      out.tau1 = std::min(out.tau1, y[i] * y[i] / (2.0 * inst.lambda()));
    }
    if (std::abs(y[i]) <= zero_tol) {
      out.gamma_star.push_back(i);
    }
  }

  out.tau2 = inf;
  if (!out.gamma_star.empty()) {
    const Eigen::MatrixXd A_G = inst.A()(out.gamma_star, Eigen::all);
    const Eigen::VectorXd grad = inst.objective().gradient(w.x);
    // p* solves (A_G A_G^T) p = -A_G grad, i.e. the normal equations of
    // min_p ||A_G^T p + grad||; use a rank-revealing least-squares solve so
    // a deficient A_G still yields the minimum-norm p*.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(
        A_G.transpose());
    out.rank_deficient =
        cod.rank() < static_cast<Eigen::Index>(out.gamma_star.size());
    const Eigen::VectorXd p = cod.solve(-grad);
    const double pmax = p.size() ? p.cwiseAbs().maxCoeff() : 0.0;
    if (pmax > 0.0) {
      out.tau2 = 2.0 * inst.lambda() / (pmax * pmax);
    }
  }

  out.tau_star = std::min(out.tau1, out.tau2);
  return out;
}

}  // namespace nm01
