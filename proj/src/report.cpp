#include "nep/report.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "nep/errors.hpp"

namespace nep {

namespace {

using json = nlohmann::json;

std::string exact(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

double parse_double(const std::string& s) {
  double x = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(b, e, x);
  if (ec != std::errc() || ptr != e) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw ArgumentError("not a number: '" + s + "'");
  }
  return x;
}

std::string complex6(Complex z) {
  char buf[64];
  if (z.imag() >= 0)
    std::snprintf(buf, sizeof buf, "%.6g + %.6gi", z.real(), z.imag());
  else
    std::snprintf(buf, sizeof buf, "%.6g - %.6gi", z.real(), -z.imag());
  return buf;
}

json number_json(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

double number_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_double(j.get<std::string>());
  throw ArgumentError("expected a number");
}

}  // namespace

ReportFormat parse_format(const std::string& name) {
  if (name == "table") return ReportFormat::Table;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw UnknownName(name, {"table", "csv", "json"});
}

std::string format_name(ReportFormat f) {
  switch (f) {
    case ReportFormat::Table: return "table";
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Json: return "json";
  }
  return "?";
}

std::string to_table(const RunReport& r) {
  std::ostringstream os;
  os << "problem: " << r.problem;
  for (const auto& [k, v] : r.params) os << ' ' << k << '=' << exact(v);
  os << "\nsolver:  " << r.solver;
  for (const auto& [k, v] : r.options) os << ' ' << k << '=' << v;
  os << "\n\n";
  char line[160];
  std::snprintf(line, sizeof line, "%4s  %-32s  %-12s\n", "#", "eigenvalue", "residual");
  os << line;
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    std::snprintf(line, sizeof line, "%4zu  %-32s  %-12.3e\n", i + 1,
                  complex6(r.eigenvalues[i]).c_str(), r.residuals[i]);
    os << line;
  }
  std::snprintf(line, sizeof line, "\niterations: %d  time: %.3f ms  basis: %ld  converged: %s\n",
                r.iterations, r.wall_ms, r.basis_dim, r.converged ? "yes" : "no");
  os << line;
  if (!r.message.empty()) os << "note: " << r.message << '\n';
  return os.str();
}

std::string to_csv(const RunReport& r) {
  std::ostringstream os;
  os << "# problem=" << r.problem << '\n';
  for (const auto& [k, v] : r.params) os << "# param." << k << '=' << exact(v) << '\n';
  os << "# solver=" << r.solver << '\n';
  for (const auto& [k, v] : r.options) os << "# option." << k << '=' << v << '\n';
  os << "# iterations=" << r.iterations << '\n';
  os << "# wall_ms=" << exact(r.wall_ms) << '\n';
  os << "# basis_dim=" << r.basis_dim << '\n';
  os << "# converged=" << (r.converged ? 1 : 0) << '\n';
  if (!r.message.empty()) os << "# message=" << r.message << '\n';
  os << "re,im,residual,iterations\n";
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
    os << exact(r.eigenvalues[i].real()) << ',' << exact(r.eigenvalues[i].imag()) << ','
       << exact(r.residuals[i]) << ',' << r.iterations << '\n';
  return os.str();
}

std::string to_json(const RunReport& r, int indent) {
  json j;
  j["problem"] = r.problem;
  j["params"] = json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = number_json(v);
  j["solver"] = r.solver;
  j["options"] = r.options;
  json eig = json::array();
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
    eig.push_back({{"re", r.eigenvalues[i].real()},
                   {"im", r.eigenvalues[i].imag()},
                   {"residual", number_json(r.residuals[i])}});
  j["eigenvalues"] = std::move(eig);
  j["iterations"] = r.iterations;
  j["wall_ms"] = r.wall_ms;
  j["basis_dim"] = r.basis_dim;
  j["converged"] = r.converged;
  j["message"] = r.message;
  return j.dump(indent);
}

std::string render(const RunReport& r, ReportFormat f) {
  switch (f) {
    case ReportFormat::Table: return to_table(r);
    case ReportFormat::Csv: return to_csv(r);
    case ReportFormat::Json: return to_json(r) + "\n";
  }
  return {};
}

RunReport report_from_csv(const std::string& text) {
  RunReport r;
  std::istringstream is(text);
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ArgumentError("malformed metadata line: " + line);
      const std::string key = line.substr(2, eq - 2), value = line.substr(eq + 1);
      if (key == "problem") r.problem = value;
      else if (key == "solver") r.solver = value;
      else if (key.rfind("param.", 0) == 0) r.params[key.substr(6)] = parse_double(value);
      else if (key.rfind("option.", 0) == 0) r.options[key.substr(7)] = value;
      else if (key == "iterations") r.iterations = std::stoi(value);
      else if (key == "wall_ms") r.wall_ms = parse_double(value);
      else if (key == "basis_dim") r.basis_dim = std::stol(value);
      else if (key == "converged") r.converged = value == "1";
      else if (key == "message") r.message = value;
      else throw ArgumentError("unknown metadata key: " + key);
      continue;
    }
    if (!header) {
      if (line != "re,im,residual,iterations") throw ArgumentError("unexpected CSV header: " + line);
      header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 4) throw ArgumentError("CSV row needs 4 columns: " + line);
    r.eigenvalues.emplace_back(parse_double(cells[0]), parse_double(cells[1]));
    r.residuals.push_back(parse_double(cells[2]));
  }
  if (!header) throw ArgumentError("CSV header missing");
  return r;
}

RunReport report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    RunReport r;
    r.problem = j.at("problem").get<std::string>();
    for (const auto& [k, v] : j.at("params").items()) r.params[k] = number_from(v);
    r.solver = j.at("solver").get<std::string>();
    r.options = j.at("options").get<std::map<std::string, std::string>>();
    for (const json& e : j.at("eigenvalues")) {
      r.eigenvalues.emplace_back(e.at("re").get<double>(), e.at("im").get<double>());
      r.residuals.push_back(number_from(e.at("residual")));
    }
    r.iterations = j.at("iterations").get<int>();
    r.wall_ms = j.at("wall_ms").get<double>();
    r.basis_dim = j.at("basis_dim").get<long>();
    r.converged = j.at("converged").get<bool>();
    r.message = j.at("message").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed report JSON: ") + e.what());
  }
}

}  // namespace nep
