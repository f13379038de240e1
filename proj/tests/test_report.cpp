#include <doctest.h>

#include <json.hpp>

#include "nep/errors.hpp"
#include "nep/report.hpp"

using namespace nep;

namespace {

RunReport sample() {
  RunReport r;
  r.problem = "dep0";
  r.params = {{"n", 5.0}, {"tau", 0.1}};
  r.solver = "iar";
  r.options = {{"target", "-2"}, {"maxit", "30"}};
  r.eigenvalues = {Complex(-0.468962729036061, 1e-17), Complex(0.1 / 3.0, -2.0 / 7.0)};
  r.residuals = {3.0e-15, 1.0 / 3.0 * 1e-11};
  r.iterations = 24;
  r.wall_ms = 6.25;
  r.basis_dim = 25;
  r.converged = true;
  r.message = "ok";
  return r;
}

}  // namespace

TEST_CASE("csv round trip is exact") {
  const RunReport r = sample();
  const std::string csv = to_csv(r);
  CHECK(csv.find("re,im,residual,iterations") != std::string::npos);
  CHECK(report_from_csv(csv) == r);
}

TEST_CASE("json round trip is exact") {
  const RunReport r = sample();
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["solver"] == "iar");
  CHECK(j["eigenvalues"].size() == 2);
  CHECK(report_from_json(to_json(r)) == r);
  CHECK(report_from_json(to_json(r, -1)) == r);
}

TEST_CASE("table shows six significant digits") {
  const std::string t = to_table(sample());
  CHECK(t.find("-0.468963") != std::string::npos);
  CHECK(t.find("dep0") != std::string::npos);
}

TEST_CASE("formats") {
  for (auto f : {ReportFormat::Table, ReportFormat::Csv, ReportFormat::Json})
    CHECK(parse_format(format_name(f)) == f);
  CHECK_THROWS_AS(parse_format("xml"), UnknownName);
  CHECK_THROWS_AS(report_from_json("{"), ArgumentError);
  CHECK_THROWS_AS(report_from_csv("1,2\n"), ArgumentError);
}

TEST_CASE("empty report") {
  RunReport r;
  r.problem = "x";
  CHECK(report_from_csv(to_csv(r)) == r);
  CHECK(report_from_json(to_json(r)) == r);
}
