// Command-line front end: svm (train a 0/1-loss linear SVM), onebit (seeded
// 1-bit recovery benchmark), check (self-check suites).
//
// Exit codes: 0 ok, 1 failed check suite, 2 bad flags, 3 data parse error,
// 4 solver failure.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "nm01/bench.hpp"
#include "nm01/data_io.hpp"
#include "nm01/onebit.hpp"
#include "nm01/svm.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadFlags = 2;
constexpr int kExitParseError = 3;
constexpr int kExitSolverFailure = 4;

std::string file_stem(const std::string& path) {
  const auto slash = path.find_last_of("/\\");
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return name;
}

struct SvmArgs {
  std::string data_path;
  double outlier_a = -1.0;
  bool has_outlier = false;
  double tau = 5.0;
  double lambda = 15.0;
  int max_iters = 1000;
  double tol = 1e-4;
  std::string out = "nm01_svm.csv";
};

int cmd_svm(const SvmArgs& args) {
  nm01::SvmDataset data;
  std::string name;
  if (!args.data_path.empty()) {
    nm01::RawDataset raw;
    try {
      raw = nm01::parse_libsvm(args.data_path);
    } catch (const std::exception& e) {
      std::cerr << "nm01 svm: " << e.what() << "\n";
      return kExitParseError;
    }
    if (raw.rows.empty() || raw.n == 0) {
      std::cerr << "nm01 svm: dataset is empty\n";
      return kExitParseError;
    }
    const nm01::ScaledDataset scaled = nm01::scale_features(raw);
    data.samples = nm01::to_dense(scaled.data);
    data.labels = nm01::map_labels(raw);
    name = file_stem(args.data_path);
  } else {
    data = nm01::synthetic_outlier(args.outlier_a);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "synthetic-outlier-%g", args.outlier_a);
    name = buf;
  }

  nm01::SvmTrainOptions opts;
  opts.tau = args.tau;
  opts.lambda = args.lambda;
  opts.solve.max_iters = args.max_iters;
  opts.solve.tol_F = args.tol;

  nm01::SvmRunResult result;
  try {
    result = nm01::run_svm(data, name, opts);
  } catch (const std::exception& e) {
    std::cerr << "nm01 svm: solver failed: " << e.what() << "\n";
    return kExitSolverFailure;
  }
  if (result.model.report.status == nm01::SolveStatus::LinearSolveFailure) {
    std::cerr << "nm01 svm: linear solve failed at iteration "
              << result.model.report.iterations << "\n";
    return kExitSolverFailure;
  }

  std::printf("%s: m=%ld n=%ld acc=%.4f iters=%d time=%.6fs\n", name.c_str(),
              result.row.m, result.row.n, result.model.train_accuracy,
              result.model.report.iterations, result.row.time_seconds);
  if (!args.out.empty()) {
    nm01::write_csv_report({result.row}, args.out);
  }
  return kExitOk;
}

struct OneBitArgs {
  nm01::OneBitBenchConfig cfg;
  std::string out = "nm01_onebit.csv";
};

int cmd_onebit(const OneBitArgs& args) {
  std::vector<nm01::OneBitTrialRow> rows;
  try {
    rows = nm01::run_onebit_trials(args.cfg);
  } catch (const nm01::SingularSystemError& e) {
    std::cerr << "nm01 onebit: solver failed: " << e.what() << "\n";
    return kExitSolverFailure;
  }

  int converged = 0;
  int failed = 0;
  for (const auto& row : rows) {
    if (row.status == nm01::SolveStatus::Converged) ++converged;
    if (row.status == nm01::SolveStatus::LinearSolveFailure) ++failed;
  }

  const nm01::OneBitSummary summary = nm01::summarize(rows);
  std::printf(
      "onebit m=%d n=%d s=%d v=%g r=%g trials=%d converged=%d seed=%llu\n",
      args.cfg.base.m, args.cfg.base.n, args.cfg.base.s, args.cfg.base.v,
      args.cfg.base.r, args.cfg.trials, converged,
      static_cast<unsigned long long>(args.cfg.base.seed));
  std::printf("newton  mean snr=%.4f he=%.4f hd=%.4f time=%.6fs\n",
              summary.newton_mean.snr, summary.newton_mean.he,
              summary.newton_mean.hd, summary.newton_mean.wall_time);
  if (summary.biht_mean) {
    std::printf("biht    mean snr=%.4f he=%.4f hd=%.4f time=%.6fs\n",
                summary.biht_mean->snr, summary.biht_mean->he,
                summary.biht_mean->hd, summary.biht_mean->wall_time);
  }
  if (!args.out.empty()) {
    nm01::write_csv_report(nm01::onebit_report_rows(rows, args.cfg), args.out);
  }
  if (failed == args.cfg.trials) {
    std::cerr << "nm01 onebit: the Newton system went singular in every "
                 "trial; metrics above come from the aborted iterates\n";
    return kExitSolverFailure;
  }
  return kExitOk;
}

int cmd_check(const std::vector<std::string>& suites, bool inject_fault) {
  std::vector<nm01::CheckResult> results;
  try {
    results = nm01::run_check_suites(suites, inject_fault);
  } catch (const std::invalid_argument& e) {
    std::cerr << "nm01 check: " << e.what() << "\n";
    return kExitBadFlags;
  }
  bool all_ok = true;
  for (const auto& r : results) {
    const bool ok = r.failures == 0;
    all_ok = all_ok && ok;
    std::printf("%-12s %6d cases %4d failures %8.3fs  %s\n", r.suite.c_str(),
                r.cases, r.failures, r.seconds, ok ? "ok" : "FAILED");
  }
  return all_ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton solver for 0/1-composite problems"};
  app.require_subcommand(1);

  SvmArgs svm_args;
  auto* svm = app.add_subcommand("svm", "Train a linear SVM with 0/1 loss");
  svm->add_option("--data", svm_args.data_path,
                  "Training data in libsvm format");
  auto* outlier = svm->add_option("--synthetic-outlier", svm_args.outlier_a,
                                  "Use the 4-point outlier set with offset a")
                      ->check(CLI::NonNegativeNumber);
  svm->add_option("--tau", svm_args.tau)->check(CLI::PositiveNumber);
  svm->add_option("--lambda", svm_args.lambda)->check(CLI::PositiveNumber);
  svm->add_option("--max-iters", svm_args.max_iters)
      ->check(CLI::NonNegativeNumber);
  svm->add_option("--tol", svm_args.tol)->check(CLI::PositiveNumber);
  svm->add_option("--out", svm_args.out, "CSV report path (empty disables)")
      ->capture_default_str();

  OneBitArgs ob;
  auto* onebit = app.add_subcommand("onebit", "1-bit recovery benchmark");
  onebit->add_option("--m", ob.cfg.base.m)->check(CLI::PositiveNumber);
  onebit->add_option("--n", ob.cfg.base.n)->check(CLI::PositiveNumber);
  onebit->add_option("--s", ob.cfg.base.s)->check(CLI::PositiveNumber);
  onebit->add_option("--v", ob.cfg.base.v, "Column correlation in [0,1)");
  onebit->add_option("--r", ob.cfg.base.r, "Sign flip ratio in [0,1)");
  onebit->add_option("--noise-sd", ob.cfg.base.noise_sd)
      ->check(CLI::NonNegativeNumber);
  onebit->add_option("--seed", ob.cfg.base.seed);
  onebit->add_option("--trials", ob.cfg.trials)->check(CLI::PositiveNumber);
  onebit->add_option("--tau", ob.cfg.recover.tau)->check(CLI::PositiveNumber);
  onebit->add_option("--lambda", ob.cfg.recover.lambda)
      ->check(CLI::PositiveNumber);
  onebit->add_option("--q", ob.cfg.recover.q);
  onebit->add_option("--margin-eps", ob.cfg.recover.margin_eps)
      ->check(CLI::PositiveNumber);
  onebit->add_option("--eps0", ob.cfg.recover.eps0)
      ->check(CLI::PositiveNumber);
  onebit->add_option("--eps-floor", ob.cfg.recover.eps_floor,
                     "Lower bound for the smoothing halving schedule")
      ->check(CLI::PositiveNumber);
  onebit->add_option("--max-iters", ob.cfg.recover.solve.max_iters)
      ->check(CLI::NonNegativeNumber);
  onebit->add_option("--tol", ob.cfg.recover.solve.tol_F)
      ->check(CLI::PositiveNumber);
  std::string baseline;
  onebit->add_option("--baseline", baseline,
                     "Also run a baseline; the only choice is 'biht'")
      ->check(CLI::IsMember({"biht"}));
  onebit->add_option("--biht-iters", ob.cfg.biht_iters)
      ->check(CLI::PositiveNumber);
  onebit->add_option("--biht-step", ob.cfg.biht_step,
                     "BIHT stepsize; <= 0 means 1/m");
  onebit->add_option("--jobs", ob.cfg.jobs,
                     "Worker threads for trials; <= 0 means all cores");
  onebit->add_option("--out", ob.out, "CSV report path (empty disables)")
      ->capture_default_str();

  std::vector<std::string> suites;
  bool inject_fault = false;
  auto* check = app.add_subcommand("check", "Run self-check suites");
  check->add_option("--suite", suites,
                    "Run only these suites (prox, finite-diff, partition, "
                    "saddle)");
  check->add_flag("--inject-fault", inject_fault)->group("");  // test hook

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadFlags;
  }

  try {
    if (svm->parsed()) {
      svm_args.has_outlier = outlier->count() > 0;
      if (svm_args.data_path.empty() && !svm_args.has_outlier) {
        std::cerr << "nm01 svm: need --data or --synthetic-outlier\n";
        return kExitBadFlags;
      }
      if (!svm_args.data_path.empty() && svm_args.has_outlier) {
        std::cerr << "nm01 svm: --data and --synthetic-outlier are exclusive\n";
        return kExitBadFlags;
      }
      return cmd_svm(svm_args);
    }
    if (onebit->parsed()) {
      if (ob.cfg.base.s > ob.cfg.base.n) {
        std::cerr << "nm01 onebit: --s must not exceed --n\n";
        return kExitBadFlags;
      }
      if (!(ob.cfg.base.v >= 0.0 && ob.cfg.base.v < 1.0) ||
          !(ob.cfg.base.r >= 0.0 && ob.cfg.base.r < 1.0)) {
        std::cerr << "nm01 onebit: --v and --r must lie in [0,1)\n";
        return kExitBadFlags;
      }
      if (!(ob.cfg.recover.q > 0.0 && ob.cfg.recover.q < 1.0)) {
        std::cerr << "nm01 onebit: --q must lie in (0,1)\n";
        return kExitBadFlags;
      }
      ob.cfg.with_biht = baseline == "biht";
      return cmd_onebit(ob);
    }
    return cmd_check(suites, inject_fault);
  } catch (const std::exception& e) {
    std::cerr << "nm01: " << e.what() << "\n";
    return kExitSolverFailure;
  }
}
