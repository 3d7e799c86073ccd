#include "nm01/onebit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nm01/rng.hpp"

namespace nm01 {

namespace {

void validate(const OneBitConfig& cfg) {
  if (cfg.m < 1 || cfg.n < 1) {
    throw std::invalid_argument("generate_instance: m and n must be >= 1");
  }
  if (cfg.s < 1 || cfg.s > cfg.n) {
    throw std::invalid_argument("generate_instance: need 1 <= s <= n");
  }
  if (!(cfg.v >= 0.0 && cfg.v < 1.0)) {
    throw std::invalid_argument("generate_instance: need 0 <= v < 1");
  }
  if (!(cfg.r >= 0.0 && cfg.r < 1.0)) {
    throw std::invalid_argument("generate_instance: need 0 <= r < 1");
  }
  if (cfg.noise_sd < 0.0) {
    throw std::invalid_argument("generate_instance: noise_sd must be >= 0");
  }
}

Eigen::VectorXd sign_vector(const Eigen::VectorXd& t) {
  Eigen::VectorXd s(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    s[i] = t[i] >= 0.0 ? 1.0 : -1.0;
  }
  return s;
}

// Indices of the k largest |x_i|, ties broken toward the lower index.
std::vector<int> top_k_by_magnitude(const Eigen::VectorXd& x, int k) {
  std::vector<int> order(static_cast<std::size_t>(x.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&x](int a, int b) {
    return std::abs(x[a]) > std::abs(x[b]);
  });
  const int keep = std::min(k, static_cast<int>(x.size()));
  order.resize(static_cast<std::size_t>(keep));
  return order;
}

}  // namespace

Eigen::MatrixXd ar1_cholesky_factor(int n, double v) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  const double w = std::sqrt(1.0 - v * v);
  for (int i = 0; i < n; ++i) {
    L(i, 0) = std::pow(v, i);
    for (int j = 1; j <= i; ++j) {
      L(i, j) = w * std::pow(v, i - j);
    }
  }
  return L;
}

OneBitInstance generate_instance(const OneBitConfig& cfg) {
  validate(cfg);
  Rng rng(cfg.seed);
  OneBitInstance inst;

  // Each row is L g with g iid standard normal, applied as the AR(1)
  // recursion the closed-form factor encodes.
  inst.A0.resize(cfg.m, cfg.n);
  const double w = std::sqrt(1.0 - cfg.v * cfg.v);
  for (int i = 0; i < cfg.m; ++i) {
    double prev = rng.normal();
    inst.A0(i, 0) = prev;
    for (int j = 1; j < cfg.n; ++j) {
      prev = cfg.v * prev + w * rng.normal();
      inst.A0(i, j) = prev;
    }
  }

  const std::vector<int> support = rng.sample_indices(cfg.n, cfg.s);
  inst.x_true = Eigen::VectorXd::Zero(cfg.n);
  for (int idx : support) {
    inst.x_true[idx] = rng.normal();
  }
  if (inst.x_true.norm() == 0.0) inst.x_true[support.front()] = 1.0;
  inst.x_true /= inst.x_true.norm();

  const Eigen::VectorXd scores = inst.A0 * inst.x_true;
  inst.c_clean = sign_vector(scores);

  Eigen::VectorXd noisy = scores;
  for (Eigen::Index i = 0; i < noisy.size(); ++i) {
    noisy[i] += cfg.noise_sd * rng.normal();
  }
  inst.c_observed = sign_vector(noisy);

  const int flips = static_cast<int>(std::ceil(cfg.r * cfg.m));
  inst.flip_indices = rng.sample_indices(cfg.m, flips);
  for (int idx : inst.flip_indices) {
    inst.c_observed[idx] = -inst.c_observed[idx];
  }
  return inst;
}

RecoveryResult recover(const OneBitInstance& inst, const RecoverOptions& opts) {
  const Eigen::MatrixXd A = (-inst.c_observed).asDiagonal() * inst.A0;
  const Eigen::VectorXd b =
      Eigen::VectorXd::Constant(inst.A0.rows(), opts.margin_eps);
  const ProblemInstance problem(smoothed_lq_model(opts.q, opts.eps0), A, b,
                                opts.lambda, opts.tau);

  SolveOptions solve_opts = opts.solve;
  if (!solve_opts.epsilon_schedule) {
    solve_opts.epsilon_schedule = EpsilonSchedule{opts.eps0, opts.eps_floor};
  }

  PrimalDualPoint w0;
  w0.x = Eigen::VectorXd::Zero(problem.n());
  w0.z = Eigen::VectorXd::Ones(problem.m());

  RecoveryResult result;
  result.report = solve(problem, w0, solve_opts);
  result.x_raw = result.report.w.x;
  return result;
}

RefineResult refine(const Eigen::VectorXd& x, int s) {
  if (s < 1) {
    throw std::invalid_argument("refine: s must be >= 1");
  }
  RefineResult out;
  out.x = Eigen::VectorXd::Zero(x.size());
  for (int idx : top_k_by_magnitude(x, s)) {
    out.x[idx] = x[idx];
  }
  const double norm = out.x.norm();
  if (norm == 0.0) {
    out.degenerate = true;
    return out;
  }
  out.x /= norm;
  return out;
}

RecoveryMetrics metrics(const Eigen::VectorXd& x_hat,
                        const OneBitInstance& inst) {
  if (x_hat.size() != inst.x_true.size()) {
    throw std::invalid_argument("metrics: dimension mismatch");
  }
  RecoveryMetrics out;
  const double err2 = (x_hat - inst.x_true).squaredNorm();
  out.snr = err2 == 0.0 ? 300.0 : std::min(300.0, -10.0 * std::log10(err2));

  const Eigen::VectorXd pred = sign_vector(inst.A0 * x_hat);
  const double m = static_cast<double>(inst.A0.rows());
  out.he = static_cast<double>(
               (pred.array() != inst.c_clean.array()).count()) /
           m;
  out.hd = static_cast<double>(
               (pred.array() != inst.c_observed.array()).count()) /
           m;
  return out;
}

Eigen::VectorXd biht_baseline(const OneBitInstance& inst, int s, int iters,
                              double step) {
  if (iters < 1) {
    throw std::invalid_argument("biht_baseline: iters must be >= 1");
  }
  if (s < 1 || s > inst.A0.cols()) {
    throw std::invalid_argument("biht_baseline: need 1 <= s <= n");
  }
  if (!(step > 0.0)) {
    throw std::invalid_argument("biht_baseline: step must be > 0");
  }

  Eigen::VectorXd x = Eigen::VectorXd::Zero(inst.A0.cols());
  for (int t = 0; t < iters; ++t) {
    const Eigen::VectorXd grad =
        inst.A0.transpose() * (inst.c_observed - sign_vector(inst.A0 * x));
    const Eigen::VectorXd moved = x + step * grad;
    x.setZero();
    for (int idx : top_k_by_magnitude(moved, s)) {
      x[idx] = moved[idx];
    }
  }
  const double norm = x.norm();
  if (norm > 0.0) x /= norm;
  return x;
}

}  // namespace nm01
