#pragma once
// libsvm-format ingestion, label mapping, [-1, 1] feature scaling, and CSV
// report output.

#include <Eigen/Core>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nm01 {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line_number)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + msg),
        line(line_number) {}
  int line = 0;
};

struct RawDataset {
  // Sparse rows of (index, value) with 1-based, strictly increasing indices.
  std::vector<std::vector<std::pair<int, double>>> rows;
  std::vector<double> labels;  // raw labels as parsed
  int n = 0;                   // feature count (largest index seen)
};

// Grammar per line: label [idx:value]...; '#' starts a comment line; blank
// lines are skipped. Malformed tokens and non-increasing indices raise
// ParseError with the offending line number.
RawDataset parse_libsvm(const std::string& path);
RawDataset parse_libsvm(std::istream& in);

// label == 1 maps to +1, everything else to -1.
Eigen::VectorXd map_labels(const RawDataset& raw);

struct ScaleParams {
  Eigen::VectorXd col_min;
  Eigen::VectorXd col_max;
};

struct ScaledDataset {
  RawDataset data;
  ScaleParams params;
};

// Affine per-column map onto [-1, 1]: t -> 2 (t - min) / (max - min) - 1.
// Implicit zeros of absent entries participate in the column min/max and are
// materialized whenever their scaled value is nonzero; constant columns map
// to 0.
ScaledDataset scale_features(const RawDataset& raw);

Eigen::MatrixXd to_dense(const RawDataset& raw);

struct ReportRow {
  std::string name;
  long m = 0;
  long n = 0;
  std::vector<std::pair<std::string, double>> metrics;  // (column, value)
  double time_seconds = 0.0;
};

// Header name,m,n,<metric columns>,time; metric values round-trip exactly,
// times carry six decimals. All rows must share the metric column set.
void write_csv_report(const std::vector<ReportRow>& rows,
                      const std::string& path);
std::vector<ReportRow> read_csv_report(const std::string& path);

}  // namespace nm01
