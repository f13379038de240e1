#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nep/report.hpp"

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the command-line tool with stderr folded into the captured output.
Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" NEP_CLI_PATH "\" " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace

TEST_CASE("cli: list") {
  const Run r = run("list");
  CHECK(r.status == 0);
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line))
    if (!line.empty()) ++count;
  CHECK(count == 5);
  for (const char* name : {"dep0", "pep0", "neuron0", "sqrt_spmf", "paper_spmf_5x5"})
    CHECK(r.out.find(name) != std::string::npos);
}

TEST_CASE("cli: 5x5 example with mslp") {
  const Run r = run("solve --problem paper_spmf_5x5 --solver mslp --target 1.0");
  CHECK(r.status == 0);
  CHECK(r.out.find("0.557832") != std::string::npos);
}

TEST_CASE("cli: json output") {
  const Run r = run("solve --problem dep0 --solver augnewton --json");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["eigenvalues"].size() == 1);
  CHECK(j["eigenvalues"][0]["residual"].get<double>() < 1e-12);
  CHECK(nep::report_from_json(r.out).converged);
}

TEST_CASE("cli: format from the environment") {
  const Run r = run("solve --problem dep0 --solver mslp", "NEP_FORMAT=csv");
  CHECK(r.status == 0);
  CHECK(r.out.find("re,im,residual,iterations") != std::string::npos);
}

TEST_CASE("cli: bad arguments exit with 2") {
  Run r = run("solve --problem dep0 --solver bogus");
  CHECK(r.status == 2);
  CHECK(r.out.find("Usage") != std::string::npos);
  CHECK(run("solve --problem nothing --solver mslp").status == 2);
  CHECK(run("solve --problem dep0 --solver mslp --param colour=1").status == 2);
  CHECK(run("solve --problem dep0 --solver mslp --target 1+").status == 2);
  CHECK(run("solve --problem dep0 --solver mslp --tol -1").status == 2);
  CHECK(run("frobnicate").status == 2);
}

TEST_CASE("cli: no convergence exits with 1") {
  const Run r = run("solve --problem dep0 --solver resinv --target 100 --maxit 2");
  CHECK(r.status == 1);
}

TEST_CASE("cli: bench repeats are deterministic") {
  const Run r = run("bench --problem dep0 --solver iar --repeats 3 --format csv");
  REQUIRE(r.status == 0);
  CHECK(r.out.find("iterations_identical=yes") != std::string::npos);
}

TEST_CASE("cli: export and reload") {
  const Run e = run("export --problem neuron0");
  REQUIRE(e.status == 0);
  const std::string path = "cli_export_neuron0.json";
  {
    FILE* f = fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    fwrite(e.out.data(), 1, e.out.size(), f);
    fclose(f);
  }
  const Run r = run("solve --problem-file " + path + " --solver iar_chebyshev --target -2 --json");
  std::remove(path.c_str());
  REQUIRE(r.status == 0);
  const auto rep = nep::report_from_json(r.out);
  CHECK(!rep.eigenvalues.empty());
  for (double res : rep.residuals) CHECK(res < 1e-10);
}
