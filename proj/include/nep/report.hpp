#pragma once

// Solver run summaries and their table/CSV/JSON renderings.

#include <map>
#include <string>
#include <vector>

#include "nep/types.hpp"

namespace nep {

struct RunReport {
  std::string problem;
  std::map<std::string, double> params;
  std::string solver;
  std::map<std::string, std::string> options;
  std::vector<Complex> eigenvalues;
  std::vector<double> residuals;
  int iterations = 0;
  double wall_ms = 0.0;
  long basis_dim = 0;
  bool converged = false;
  std::string message;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

enum class ReportFormat { Table, Csv, Json };

ReportFormat parse_format(const std::string& name);
std::string format_name(ReportFormat f);

/// Eigenvalues with 6 significant digits.
std::string to_table(const RunReport& r);
/// "# key=value" metadata lines, then columns re,im,residual,iterations.
std::string to_csv(const RunReport& r);
std::string to_json(const RunReport& r, int indent = 2);
std::string render(const RunReport& r, ReportFormat f);

/// Inverses of to_csv and to_json; throw ArgumentError on malformed input.
RunReport report_from_csv(const std::string& text);
RunReport report_from_json(const std::string& text);

}  // namespace nep
