#include "nm01/saddle.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace nm01 {

namespace {

constexpr double kResidualTol = 1e-10;

struct SaddleSystem {
  const HessianRep& H;
  const Eigen::MatrixXd& A_T;
  double mu;
  const Eigen::VectorXd& rhs_x;
  const Eigen::VectorXd& rhs_T;
};

Eigen::VectorXd apply_hessian(const HessianRep& rep, const Eigen::VectorXd& x) {
  if (const auto* d = std::get_if<DiagonalHessian>(&rep)) {
    return d->d.cwiseProduct(x);
  }
  if (const auto* bd = std::get_if<BlockDiagonalHessian>(&rep)) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
    for (const auto& b : bd->blocks) {
      out.segment(b.start, b.block.rows()) =
          b.block * x.segment(b.start, b.block.cols());
    }
    return out;
  }
  return std::get<DenseHessian>(rep).H * x;
}

double relative_residual(const SaddleSystem& sys, const Eigen::VectorXd& u,
                         const Eigen::VectorXd& v) {
  const Eigen::VectorXd r_x =
      apply_hessian(sys.H, u) + sys.A_T.transpose() * v - sys.rhs_x;
  const Eigen::VectorXd r_T = sys.A_T * u - sys.mu * v - sys.rhs_T;
  const double rhs_norm =
      std::sqrt(sys.rhs_x.squaredNorm() + sys.rhs_T.squaredNorm());
  const double res = std::sqrt(r_x.squaredNorm() + r_T.squaredNorm());
  return res / std::max(1.0, rhs_norm);
}

// One pass of the diagonal Schur-complement route. `solver` factorizes the
// t x t Schur matrix S = A_T H^-1 A_T^T + mu I.
template <typename Factorize>
bool try_schur(const SaddleSystem& sys, const Eigen::VectorXd& hinv,
               Factorize&& factorize, SaddleSolution& out) {
  const Eigen::Index t = sys.A_T.rows();
  if (t == 0) {
    out.u = hinv.cwiseProduct(sys.rhs_x);
    out.v.resize(0);
  } else {
    const Eigen::MatrixXd B = sys.A_T * hinv.asDiagonal();
    Eigen::MatrixXd S = B * sys.A_T.transpose();
    S.diagonal().array() += sys.mu;
    const Eigen::VectorXd rhs_s = B * sys.rhs_x - sys.rhs_T;
    auto solver = factorize(S);
    if constexpr (requires { solver.info(); }) {
      if (solver.info() != Eigen::Success) return false;
    }
    out.v = solver.solve(rhs_s);
    out.u = hinv.cwiseProduct(sys.rhs_x - sys.A_T.transpose() * out.v);
    // Iterative refinement against the full system keeps the residual at the
    // contract level even when S is poorly scaled.
    for (int pass = 0; pass < 2 && relative_residual(sys, out.u, out.v) > kResidualTol;
         ++pass) {
      const Eigen::VectorXd r_x =
          sys.rhs_x - apply_hessian(sys.H, out.u) - sys.A_T.transpose() * out.v;
      const Eigen::VectorXd r_T = sys.rhs_T - sys.A_T * out.u + sys.mu * out.v;
      const Eigen::VectorXd dv = solver.solve(B * r_x - r_T);
      out.v += dv;
      out.u += hinv.cwiseProduct(r_x - sys.A_T.transpose() * dv);
    }
  }
  out.used_schur = true;
  return relative_residual(sys, out.u, out.v) <= kResidualTol;
}

bool try_dense(const SaddleSystem& sys, double ridge, SaddleSolution& out) {
  const Eigen::Index n = sys.rhs_x.size();
  const Eigen::Index t = sys.A_T.rows();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n + t, n + t);
  K.topLeftCorner(n, n) = hessian_dense(sys.H);
  K.topLeftCorner(n, n).diagonal().array() += ridge;
  if (t > 0) {
    K.topRightCorner(n, t) = sys.A_T.transpose();
    K.bottomLeftCorner(t, n) = sys.A_T;
  }
  K.bottomRightCorner(t, t).diagonal().array() -= sys.mu + ridge;
  Eigen::VectorXd rhs(n + t);
  rhs << sys.rhs_x, sys.rhs_T;

  const Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
  Eigen::VectorXd s = lu.solve(rhs);
  // Refinement against the unperturbed system (ridge = 0 in the residual).
  for (int pass = 0; pass < 2; ++pass) {
    out.u = s.head(n);
    out.v = s.tail(t);
    if (relative_residual(sys, out.u, out.v) <= kResidualTol) break;
    Eigen::VectorXd r(n + t);
    r.head(n) = sys.rhs_x - apply_hessian(sys.H, out.u) -
                sys.A_T.transpose() * out.v;
    r.tail(t) = sys.rhs_T - sys.A_T * out.u + sys.mu * out.v;
    s += lu.solve(r);
  }
  out.u = s.head(n);
  out.v = s.tail(t);
  out.used_schur = false;
  return relative_residual(sys, out.u, out.v) <= kResidualTol;
}

void check_dimensions(const SaddleSystem& sys) {
  const int n = hessian_dim(sys.H);
  if (sys.rhs_x.size() != n) {
    throw std::invalid_argument("solve_saddle: rhs_x length mismatch");
  }
  if (sys.A_T.rows() != sys.rhs_T.size()) {
    throw std::invalid_argument("solve_saddle: rhs_T length mismatch");
  }
  if (sys.A_T.rows() > 0 && sys.A_T.cols() != n) {
    throw std::invalid_argument("solve_saddle: A_T column count mismatch");
  }
  if (!(sys.mu >= 0.0) || !std::isfinite(sys.mu)) {
    throw std::invalid_argument("solve_saddle: mu must be finite and >= 0");
  }
  validate_hessian(sys.H);
}

SaddleSolution solve_impl(const SaddleSystem& sys, bool allow_schur) {
  SaddleSolution out;

  if (allow_schur) {
    if (const auto* diag = std::get_if<DiagonalHessian>(&sys.H)) {
      const double mx = diag->d.size() ? diag->d.cwiseAbs().maxCoeff() : 0.0;
      const bool invertible =
          mx > 0.0 && diag->d.cwiseAbs().minCoeff() >= 1e-12 * mx;
      if (invertible) {
        const Eigen::VectorXd hinv = diag->d.cwiseInverse();
        if (try_schur(sys, hinv,
                      [](const Eigen::MatrixXd& S) {
                        return Eigen::LDLT<Eigen::MatrixXd>(S);
                      },
                      out)) {
          return out;
        }
        SaddleSolution lu_out;
        if (try_schur(sys, hinv,
                      [](const Eigen::MatrixXd& S) {
                        return Eigen::PartialPivLU<Eigen::MatrixXd>(S);
                      },
                      lu_out)) {
          return lu_out;
        }
      }
    }
  }

  if (try_dense(sys, 0.0, out)) return out;

  double ridge = 1e-12 * hessian_max_abs(sys.H);
  if (ridge == 0.0) ridge = 1e-12;
  if (try_dense(sys, ridge, out)) {
    out.ridge_retried = true;
    return out;
  }
  throw SingularSystemError(
      "solve_saddle: system is singular to the residual tolerance even after "
      "a ridge retry");
}

}  // namespace

SaddleSolution solve_saddle(const HessianRep& H, const Eigen::MatrixXd& A_T,
                            double mu, const Eigen::VectorXd& rhs_x,
                            const Eigen::VectorXd& rhs_T) {
  const SaddleSystem sys{H, A_T, mu, rhs_x, rhs_T};
  check_dimensions(sys);
  return solve_impl(sys, true);
}

SaddleSolution solve_saddle_dense(const HessianRep& H,
                                  const Eigen::MatrixXd& A_T, double mu,
                                  const Eigen::VectorXd& rhs_x,
                                  const Eigen::VectorXd& rhs_T) {
  const SaddleSystem sys{H, A_T, mu, rhs_x, rhs_T};
  check_dimensions(sys);
  return solve_impl(sys, false);
}

SpectralEstimate spectral_norm_estimate(const Eigen::MatrixXd& A,
                                        int max_iters, double tol) {
  if (max_iters < 1) {
    throw std::invalid_argument("spectral_norm_estimate: max_iters must be >= 1");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("spectral_norm_estimate: tol must be > 0");
  }
  SpectralEstimate est;
  if (A.size() == 0 || A.cwiseAbs().maxCoeff() == 0.0) {
    est.converged = true;
    return est;
  }

  // Deterministic pseudo-random start avoids adversarial orthogonality to the
  // leading singular vector.
  std::mt19937_64 eng(0x9e3779b97f4a7c15ull);
  Eigen::VectorXd v(A.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v[i] = static_cast<double>(eng() >> 11) * 0x1.0p-53 - 0.5;
  }
  if (v.norm() == 0.0) v.setOnes();
  v.normalize();

  double sigma = 0.0;
  for (int it = 1; it <= max_iters; ++it) {
    est.iterations = it;
    const Eigen::VectorXd w = A * v;
    const double sigma_new = w.norm();
    if (sigma_new == 0.0) {
      // v landed in the null space; restart from a fresh direction.
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        v[i] = static_cast<double>(eng() >> 11) * 0x1.0p-53 - 0.5;
      }
      v.normalize();
      continue;
    }
    v = A.transpose() * w;
    v.normalize();
    if (std::abs(sigma_new - sigma) <= tol * sigma_new) {
      est.value = sigma_new;
      est.converged = true;
      return est;
    }
    sigma = sigma_new;
  }
  est.value = sigma;
  est.converged = false;
  return est;
}

}  // namespace nm01
