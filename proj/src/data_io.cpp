#include "nm01/data_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace nm01 {

namespace {

bool parse_double(const std::string& token, double& out) {
  errno = 0;
  char* end = nullptr;
  out = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || token.empty()) return false;
  // Underflow to a subnormal still parses; only overflow is rejected.
  return !(errno == ERANGE && (out == HUGE_VAL || out == -HUGE_VAL));
}

bool parse_index(const std::string& token, int& out) {
  errno = 0;
  char* end = nullptr;
  const long value = std::strtol(token.c_str(), &end, 10);
  if (end != token.c_str() + token.size() || token.empty() ||
      errno == ERANGE || value < std::numeric_limits<int>::min() ||
      value > std::numeric_limits<int>::max()) {
    return false;
  }
  out = static_cast<int>(value);
  return true;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string format_time(double seconds) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", seconds);
  return buf;
}

}  // namespace

RawDataset parse_libsvm(std::istream& in) {
  RawDataset out;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;

    std::istringstream tokens(body);
    std::string token;
    tokens >> token;
    double label;
    if (!parse_double(token, label)) {
      throw ParseError("bad label '" + token + "'", line_number);
    }

    std::vector<std::pair<int, double>> row;
    int last_index = 0;
    while (tokens >> token) {
      const auto colon = token.find(':');
      if (colon == std::string::npos) {
        throw ParseError("feature token '" + token + "' lacks ':'",
                         line_number);
      }
      int index;
      double value;
      if (!parse_index(token.substr(0, colon), index)) {
        throw ParseError("bad feature index in '" + token + "'", line_number);
      }
      if (!parse_double(token.substr(colon + 1), value)) {
        throw ParseError("bad feature value in '" + token + "'", line_number);
      }
      if (index < 1) {
        throw ParseError("feature index must be >= 1", line_number);
      }
      if (index <= last_index) {
        throw ParseError("feature indices must be strictly increasing",
                         line_number);
      }
      last_index = index;
      row.emplace_back(index, value);
      out.n = std::max(out.n, index);
    }
    out.labels.push_back(label);
    out.rows.push_back(std::move(row));
  }
  return out;
}

RawDataset parse_libsvm(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("parse_libsvm: cannot open '" + path + "'");
  }
  return parse_libsvm(in);
}

Eigen::VectorXd map_labels(const RawDataset& raw) {
  Eigen::VectorXd labels(static_cast<Eigen::Index>(raw.labels.size()));
  for (std::size_t i = 0; i < raw.labels.size(); ++i) {
    labels[static_cast<Eigen::Index>(i)] = raw.labels[i] == 1.0 ? 1.0 : -1.0;
  }
  return labels;
}

ScaledDataset scale_features(const RawDataset& raw) {
  ScaledDataset out;
  out.data.labels = raw.labels;
  out.data.n = raw.n;
  out.params.col_min = Eigen::VectorXd::Zero(raw.n);
  out.params.col_max = Eigen::VectorXd::Zero(raw.n);
  if (raw.n == 0) {
    out.data.rows.assign(raw.rows.size(), {});
    return out;
  }

  // Implicit zeros take part in the extrema whenever a column is absent from
  // at least one row.
  Eigen::VectorXd col_min =
      Eigen::VectorXd::Constant(raw.n, std::numeric_limits<double>::infinity());
  Eigen::VectorXd col_max = Eigen::VectorXd::Constant(
      raw.n, -std::numeric_limits<double>::infinity());
  std::vector<std::size_t> seen(static_cast<std::size_t>(raw.n), 0);
  for (const auto& row : raw.rows) {
    for (const auto& [index, value] : row) {
      const int j = index - 1;
      col_min[j] = std::min(col_min[j], value);
      col_max[j] = std::max(col_max[j], value);
      ++seen[static_cast<std::size_t>(j)];
    }
  }
  for (int j = 0; j < raw.n; ++j) {
    if (seen[static_cast<std::size_t>(j)] < raw.rows.size()) {
      col_min[j] = std::min(col_min[j], 0.0);
      col_max[j] = std::max(col_max[j], 0.0);
    }
    if (seen[static_cast<std::size_t>(j)] == 0) {
      col_min[j] = 0.0;
      col_max[j] = 0.0;
    }
  }
  out.params.col_min = col_min;
  out.params.col_max = col_max;

  const auto scale = [&](int j, double t) {
    const double lo = col_min[j];
    const double hi = col_max[j];
    if (hi == lo) return 0.0;
    return 2.0 * (t - lo) / (hi - lo) - 1.0;
  };

  out.data.rows.reserve(raw.rows.size());
  for (const auto& row : raw.rows) {
    std::vector<std::pair<int, double>> scaled;
    std::size_t cursor = 0;
    for (int j = 0; j < raw.n; ++j) {
      double t = 0.0;
      if (cursor < row.size() && row[cursor].first == j + 1) {
        t = row[cursor].second;
        ++cursor;
      }
      const double value = scale(j, t);
      if (value != 0.0) scaled.emplace_back(j + 1, value);
    }
    out.data.rows.push_back(std::move(scaled));
  }
  return out;
}

Eigen::MatrixXd to_dense(const RawDataset& raw) {
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(raw.rows.size()), raw.n);
  for (std::size_t i = 0; i < raw.rows.size(); ++i) {
    for (const auto& [index, value] : raw.rows[i]) {
      dense(static_cast<Eigen::Index>(i), index - 1) = value;
    }
  }
  return dense;
}

void write_csv_report(const std::vector<ReportRow>& rows,
                      const std::string& path) {
  // Validate before touching the file so a bad row never leaves a partial
  // report behind.
  for (const auto& row : rows) {
    if (row.metrics.size() != rows.front().metrics.size()) {
      throw std::invalid_argument(
          "write_csv_report: rows disagree on metric columns");
    }
    for (std::size_t j = 0; j < row.metrics.size(); ++j) {
      if (row.metrics[j].first != rows.front().metrics[j].first) {
        throw std::invalid_argument(
            "write_csv_report: rows disagree on metric columns");
      }
    }
  }

  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) {
    throw std::runtime_error("write_csv_report: cannot open '" + path + "'");
  }
  out << "name,m,n";
  if (!rows.empty()) {
    for (const auto& [column, value] : rows.front().metrics) {
      out << ',' << column;
    }
  }
  out << ",time\n";
  for (const auto& row : rows) {
    out << row.name << ',' << row.m << ',' << row.n;
    for (const auto& [column, value] : row.metrics) {
      out << ',' << format_double(value);
    }
    out << ',' << format_time(row.time_seconds) << '\n';
  }
}

std::vector<ReportRow> read_csv_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("read_csv_report: cannot open '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("read_csv_report: missing header");
  }
  std::vector<std::string> columns;
  {
    std::istringstream header(trim(line));
    std::string field;
    while (std::getline(header, field, ',')) columns.push_back(field);
  }
  if (columns.size() < 4 || columns[0] != "name" || columns[1] != "m" ||
      columns[2] != "n" || columns.back() != "time") {
    throw std::runtime_error("read_csv_report: unexpected header");
  }

  std::vector<ReportRow> rows;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string body = trim(line);
    if (body.empty()) continue;
    std::istringstream fields(body);
    std::string field;
    ReportRow row;
    std::size_t k = 0;
    while (std::getline(fields, field, ',')) {
      if (k == 0) {
        row.name = field;
      } else if (k == 1) {
        row.m = std::strtol(field.c_str(), nullptr, 10);
      } else if (k == 2) {
        row.n = std::strtol(field.c_str(), nullptr, 10);
      } else if (k < columns.size() - 1) {
        double value;
        if (!parse_double(field, value)) {
          throw ParseError("bad metric value '" + field + "'", line_number);
        }
        row.metrics.emplace_back(columns[k], value);
      } else {
        double value;
        if (!parse_double(field, value)) {
          throw ParseError("bad time value '" + field + "'", line_number);
        }
        row.time_seconds = value;
      }
      ++k;
    }
    if (k != columns.size()) {
      throw ParseError("wrong field count", line_number);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace nm01
