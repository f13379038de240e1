// Command-line front end: list, solve, bench, export.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "nep/errors.hpp"
#include "nep/gallery.hpp"
#include "nep/krylov.hpp"
#include "nep/report.hpp"
#include "nep/serialize.hpp"
#include "nep/solvers.hpp"

namespace {

using nep::Complex;

constexpr int kExitOk = 0;
constexpr int kExitNoConvergence = 1;
constexpr int kExitBadArgs = 2;

const std::vector<std::string> kSolvers = {"augnewton", "resinv",        "quasinewton",
                                           "mslp",      "newtonqr",      "iar",
                                           "iar_chebyshev", "nlar",      "beyn"};

struct Settings {
  std::string problem;
  std::string problem_file;
  bool many_terms = false;
  std::vector<std::string> params;
  std::string solver = "augnewton";
  std::string target = "0";
  std::optional<double> tol;
  std::optional<int> maxit;
  int num_eigs = 0;
  std::string format;
  bool json = false;
  std::optional<long> seed;
  int log_level = 0;
  int wrap_derspmf = -1;
  double radius = 1.0;
  int nodes = 128;
  std::string gamma;
  int repeats = 5;
};

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s.empty()) throw nep::ArgumentError("empty complex number");
  if (s.back() != 'i' && s.back() != 'j') {
    std::size_t pos = 0;
    double re = std::stod(s, &pos);
    if (pos != s.size()) throw nep::ArgumentError("invalid number '" + text + "'");
    return {re, 0.0};
  }
  s.pop_back();
  // split at the last sign that is not an exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  auto num = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t pos = 0;
    double v = std::stod(part, &pos);
    if (pos != part.size()) throw nep::ArgumentError("invalid number '" + text + "'");
    return v;
  };
  if (split == std::string::npos) return {0.0, num(s)};
  return {num(s.substr(0, split)), num(s.substr(split))};
}

nep::GalleryParams parse_params(const Settings& s) {
  nep::GalleryParams p;
  for (const std::string& kv : s.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw nep::ArgumentError("--param expects key=value, got '" + kv + "'");
    std::size_t pos = 0;
    const std::string value = kv.substr(eq + 1);
    double v = 0.0;
    try {
      v = std::stod(value, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != value.size())
      throw nep::ArgumentError("--param value for '" + kv.substr(0, eq) + "' is not a number");
    p[kv.substr(0, eq)] = v;
  }
  if (s.seed) p["seed"] = static_cast<double>(*s.seed);
  return p;
}

struct Problem {
  nep::NepPtr nep;
  std::string name;
  nep::GalleryParams params;
};

Problem load_problem(const Settings& s) {
  Problem pr;
  const int sources = !s.problem.empty() + !s.problem_file.empty() + s.many_terms;
  if (sources != 1)
    throw nep::ArgumentError("give exactly one of --problem, --problem-file, --many-terms");
  if (!s.problem.empty()) {
    pr.params = parse_params(s);
    // --seed only applies to problems that take one
    const auto& entries = nep::gallery_entries();
    auto it = std::find_if(entries.begin(), entries.end(),
                           [&](const auto& e) { return e.name == s.problem; });
    if (s.seed && it != entries.end() && !it->defaults.count("seed")) pr.params.erase("seed");
    pr.nep = nep::nep_gallery(s.problem, pr.params);
    pr.name = s.problem;
  } else if (!s.problem_file.empty()) {
    std::ifstream in(s.problem_file);
    if (!in) throw nep::ArgumentError("cannot read problem file '" + s.problem_file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    pr.nep = nep::deserialize_problem(buf.str());
    pr.name = s.problem_file;
  } else {
    const std::uint64_t seed = s.seed ? static_cast<std::uint64_t>(*s.seed) : 0;
    pr.nep = nep::many_terms_spmf(200, 50, seed);
    pr.name = "many_terms";
    pr.params = {{"m", 200}, {"n", 50}, {"seed", static_cast<double>(seed)}};
  }
  if (s.wrap_derspmf >= 0) {
    if (!pr.nep->as_spmf())
      throw nep::ArgumentError("--wrap-derspmf needs a sum-of-products problem");
    pr.nep = nep::make_derspmf(pr.nep, parse_complex(s.target), s.wrap_derspmf);
    pr.name += "+derspmf";
  }
  return pr;
}

struct Outcome {
  nep::RunReport report;
  bool no_convergence = false;
};

Outcome run_solver(const Settings& s, const Problem& pr) {
  if (std::find(kSolvers.begin(), kSolvers.end(), s.solver) == kSolvers.end())
    throw nep::UnknownName(s.solver, kSolvers);
  Outcome out;
  nep::RunReport& r = out.report;
  r.problem = pr.name;
  r.params = pr.params;
  r.solver = s.solver;
  const Complex target = parse_complex(s.target);
  r.options["target"] = s.target;
  if (s.tol) r.options["tol"] = std::to_string(*s.tol);
  if (s.maxit) r.options["maxit"] = std::to_string(*s.maxit);
  if (s.num_eigs) r.options["num_eigs"] = std::to_string(s.num_eigs);

  nep::LogSink log = [](std::string_view line) { std::cerr << line << '\n'; };
  auto fill_common = [&](nep::SolveOptions& o) {
    o.target = target;
    if (s.tol) o.tol = *s.tol;
    if (s.maxit) o.maxit = *s.maxit;
    if (s.num_eigs > 0) o.neigs = s.num_eigs;
    o.log_level = s.log_level;
    o.log = log;
  };

  const auto start = std::chrono::steady_clock::now();
  try {
    if (s.solver == "iar" || s.solver == "iar_chebyshev" || s.solver == "nlar" ||
        s.solver == "beyn") {
      nep::KrylovResult k;
      if (s.solver == "nlar") {
        nep::NlarOptions o;
        fill_common(o);
        k = nep::nlar(pr.nep, o);
      } else if (s.solver == "beyn") {
        nep::SolveOptions o;
        fill_common(o);
        if (!s.tol) o.tol = 1e-8;
        nep::ContourSpec c;
        c.center = target;
        c.radius = s.radius;
        c.nodes = s.nodes;
        if (s.seed) c.seed = static_cast<std::uint64_t>(*s.seed);
        r.options["radius"] = std::to_string(s.radius);
        r.options["nodes"] = std::to_string(s.nodes);
        k = nep::beyn_contour(pr.nep, c, o);
      } else {
        nep::KrylovOptions o;
        fill_common(o);
        if (!s.gamma.empty()) o.gamma = parse_complex(s.gamma);
        k = s.solver == "iar" ? nep::iar(pr.nep, o) : nep::iar_chebyshev(pr.nep, o);
      }
      r.eigenvalues = k.values;
      r.residuals = k.residuals;
      r.iterations = k.iterations;
      r.basis_dim = static_cast<long>(k.basis_dim);
      r.converged = !k.values.empty();
      if (!r.converged) {
        out.no_convergence = true;
        r.message = "no eigenpair converged";
      }
    } else {
      nep::SolveOptions o;
      fill_common(o);
      const nep::NewtonMethod method = nep::parse_newton_method(s.solver);
      if (s.num_eigs > 1) {
        nep::DeflationOutcome d = nep::solve_k_eigenpairs(pr.nep, s.num_eigs, o, method);
        for (const auto& p : d.pairs) {
          r.eigenvalues.push_back(p.lambda);
          r.residuals.push_back(p.residual);
        }
        r.iterations = static_cast<int>(d.pairs.size());
        r.basis_dim = static_cast<long>(d.S.rows());
        r.converged = !d.pairs.empty();
        if (!d.complete()) {
          r.message = "eigenpair " + std::to_string(d.failed_index + 1) + ": " + d.failure;
          out.no_convergence = d.pairs.empty();
        }
      } else {
        nep::NewtonResult nr = nep::run_newton(method, pr.nep, o);
        r.eigenvalues = {nr.lambda};
        r.residuals = {nep::relative_residual(*pr.nep, nr.lambda, nr.v)};
        r.iterations = nr.iterations;
        r.basis_dim = 1;
        r.converged = true;
      }
    }
  } catch (const nep::NoConvergence& e) {
    out.no_convergence = true;
    r.converged = false;
    r.iterations = e.iterations();
    r.message = e.what();
  }
  r.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

nep::ReportFormat choose_format(const Settings& s) {
  if (s.json) return nep::ReportFormat::Json;
  if (!s.format.empty()) return nep::parse_format(s.format);
  if (const char* env = std::getenv("NEP_FORMAT"); env && *env) return nep::parse_format(env);
  return nep::ReportFormat::Table;
}

void add_problem_options(CLI::App* app, Settings& s) {
  app->add_option("--problem", s.problem, "gallery problem name");
  app->add_option("--problem-file", s.problem_file, "problem in JSON form");
  app->add_flag("--many-terms", s.many_terms, "200-term random SPMF (m=200, n=50)");
  app->add_option("--param", s.params, "gallery parameter key=value (repeatable)");
  app->add_option("--seed", s.seed, "random seed for the problem and probes");
  app->add_option("--wrap-derspmf", s.wrap_derspmf,
                  "precompute N derivatives at the target (sum-of-products problems)");
}

void add_solver_options(CLI::App* app, Settings& s) {
  app->add_option("--solver", s.solver, "augnewton|resinv|quasinewton|mslp|newtonqr|iar|"
                                        "iar_chebyshev|nlar|beyn");
  app->add_option("--target", s.target, "target / shift, e.g. -2 or 1+0.5i");
  app->add_option("--tol", s.tol, "convergence tolerance");
  app->add_option("--maxit", s.maxit, "iteration limit");
  app->add_option("--num-eigs", s.num_eigs, "number of eigenpairs");
  app->add_option("--log-level", s.log_level, "0 silent, 1 one line per iteration (stderr)");
  app->add_option("--radius", s.radius, "contour radius (beyn)");
  app->add_option("--nodes", s.nodes, "quadrature nodes (beyn)");
  app->add_option("--gamma", s.gamma, "Krylov scaling (iar, iar_chebyshev)");
}

int cmd_list(std::ostream& out) {
  for (const auto& e : nep::gallery_entries()) {
    out << e.name;
    for (std::size_t k = e.name.size(); k < 16; ++k) out << ' ';
    out << e.description;
    if (!e.defaults.empty()) {
      out << "  [";
      bool first = true;
      for (const auto& [k, v] : e.defaults) {
        out << (first ? "" : ", ") << k << '=' << v;
        first = false;
      }
      out << ']';
    }
    out << '\n';
  }
  return kExitOk;
}

int cmd_solve(const Settings& s) {
  const nep::ReportFormat fmt = choose_format(s);
  const Problem pr = load_problem(s);
  Outcome o = run_solver(s, pr);
  std::cout << nep::render(o.report, fmt);
  return o.no_convergence ? kExitNoConvergence : kExitOk;
}

int cmd_bench(const Settings& s) {
  if (s.repeats < 1) throw nep::ArgumentError("--repeats must be at least 1");
  const nep::ReportFormat fmt = choose_format(s);
  const Problem pr = load_problem(s);
  std::vector<double> times;
  std::vector<int> iterations;
  Outcome last;
  for (int i = 0; i < s.repeats; ++i) {
    last = run_solver(s, pr);
    times.push_back(last.report.wall_ms);
    iterations.push_back(last.report.iterations);
  }
  std::vector<double> sorted = times;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t R = sorted.size();
  const double median = R % 2 ? sorted[R / 2] : 0.5 * (sorted[R / 2 - 1] + sorted[R / 2]);
  const bool same_iterations =
      std::all_of(iterations.begin(), iterations.end(), [&](int k) { return k == iterations[0]; });

  nep::RunReport r = last.report;
  r.wall_ms = median;
  r.options["repeats"] = std::to_string(R);
  r.options["min_ms"] = std::to_string(sorted.front());
  r.options["median_ms"] = std::to_string(median);
  r.options["iterations_identical"] = same_iterations ? "yes" : "no";
  std::cout << nep::render(r, fmt);
  return last.no_convergence ? kExitNoConvergence : kExitOk;
}

int cmd_export(const Settings& s) {
  const Problem pr = load_problem(s);
  std::cout << nep::serialize_problem(*pr.nep) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear eigenvalue problem solvers"};
  app.require_subcommand(1);
  Settings s;

  auto* list = app.add_subcommand("list", "list gallery problems");

  auto* solve = app.add_subcommand("solve", "solve a problem");
  add_problem_options(solve, s);
  add_solver_options(solve, s);
  solve->add_option("--format", s.format, "table|csv|json (default from NEP_FORMAT)");
  solve->add_flag("--json", s.json, "same as --format json");

  auto* bench = app.add_subcommand("bench", "time repeated solves");
  add_problem_options(bench, s);
  add_solver_options(bench, s);
  bench->add_option("--repeats", s.repeats, "number of runs (default 5)");
  bench->add_option("--format", s.format, "table|csv|json");
  bench->add_flag("--json", s.json, "same as --format json");

  auto* exp = app.add_subcommand("export", "write a problem as JSON");
  add_problem_options(exp, s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadArgs;
  }

  try {
    if (*list) return cmd_list(std::cout);
    if (*solve) return cmd_solve(s);
    if (*bench) return cmd_bench(s);
    if (*exp) return cmd_export(s);
  } catch (const nep::UnknownName& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitBadArgs;
  } catch (const nep::ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadArgs;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid number\n";
    return kExitBadArgs;
  } catch (const nep::NepError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoConvergence;
  }
  return kExitBadArgs;
}
