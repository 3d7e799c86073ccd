#pragma once
// Harness behind the CLI: seeded trial fan-out for 1-bit recovery, SVM runs,
// and the self-check suites.

#include <optional>
#include <string>
#include <vector>

#include "nm01/data_io.hpp"
#include "nm01/onebit.hpp"
#include "nm01/svm.hpp"

namespace nm01 {

// Clamps the request to [1, hardware] and to the NM01_THREADS environment
// cap when that is set. requested <= 0 asks for the hardware count.
int resolve_jobs(int requested);

struct OneBitBenchConfig {
  OneBitConfig base;  // per-trial seeds derive from base.seed and the index
  int trials = 20;
  RecoverOptions recover;
  bool with_biht = false;
  int biht_iters = 100;
  double biht_step = 0.0;  // <= 0 resolves to 1/m
  int jobs = 1;
};

struct OneBitTrialRow {
  int trial = 0;
  RecoveryMetrics newton;
  std::optional<RecoveryMetrics> biht;
  SolveStatus status = SolveStatus::Converged;
};

// Trials run independently (possibly in parallel); outputs are ordered by
// trial index, so the parallelism degree never changes the numbers.
std::vector<OneBitTrialRow> run_onebit_trials(const OneBitBenchConfig& cfg);

struct OneBitSummary {
  RecoveryMetrics newton_mean;
  std::optional<RecoveryMetrics> biht_mean;
};

OneBitSummary summarize(const std::vector<OneBitTrialRow>& rows);

std::vector<ReportRow> onebit_report_rows(const std::vector<OneBitTrialRow>& rows,
                                          const OneBitBenchConfig& cfg);

struct SvmRunResult {
  SvmModel model;
  ReportRow row;
};

SvmRunResult run_svm(const SvmDataset& data, const std::string& name,
                     const SvmTrainOptions& opts);

struct CheckResult {
  std::string suite;
  int cases = 0;
  int failures = 0;
  double seconds = 0.0;
};

// Suites: prox (closed form vs candidate minimization), finite-diff,
// partition (cover/disjointness laws), saddle (residuals and route
// agreement). An empty filter runs everything; inject_fault forces one
// deliberate failure so runners can verify their reporting.
std::vector<CheckResult> run_check_suites(const std::vector<std::string>& which,
                                          bool inject_fault = false);

}  // namespace nm01
