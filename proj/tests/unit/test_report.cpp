#include <fstream>
#include <sstream>

#include "conekit/report.hpp"
#include "doctest.h"

using namespace conekit::report;

namespace {
VerificationReport one_check(bool pass) {
  VerificationReport r;
  r.suite = "bessel";
  SuiteConfig cfg;
  r.config_echo = cfg.echo();
  CheckRecord c;
  c.check_id = "bessel.example";
  c.paper_anchor = "k-bessel-recurrence";
  c.parameters = {{"n", 2}, {"text", "a,\"b\""}};
  c.computed = 1.0;
  c.reference = 1.0 + 1e-12;
  c.abs_error = 1e-12;
  c.rel_error = 1e-12;
  c.tolerance = 1e-10;
  c.pass = pass;
  r.checks.push_back(c);
  r.passed = pass;
  r.failed = !pass;
  r.wall_ms = 1.5;
  return r;
}
}  // namespace

TEST_CASE("json round trips through the schema check") {
  const auto j = Json::parse(to_json(one_check(true)));
  CHECK(validate_report_json(j).empty());
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["checks"][0]["check_id"] == "bessel.example");
  CHECK(j["checks"][0]["computed"].get<double>() == 1.0);
}

TEST_CASE("schema check reports problems") {
  auto j = Json::parse(to_json(one_check(true)));
  j["summary"]["passed"] = 5;
  j["checks"][0].erase("paper_anchor");
  CHECK(validate_report_json(j).size() >= 2);
  CHECK(Json::parse(to_json(one_check(true), false)).count("wall_ms") == 0);
}

TEST_CASE("csv has one row per check plus a header") {
  const std::string csv = to_csv(one_check(false));
  int rows = 0;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 2);
  // The parameters field is JSON with commas and quotes, so it is quoted.
  CHECK(csv.find(",\"{\"\"n\"\":2,") != std::string::npos);
}

TEST_CASE("text has PASS/FAIL per check and a tally") {
  CHECK(to_text(one_check(true)).find("PASS") != std::string::npos);
  const std::string t = to_text(one_check(false));
  CHECK(t.find("FAIL") != std::string::npos);
  CHECK(t.find("failed 1") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK_THROWS_AS(parse_suite("nope"), UsageError);
  CHECK_THROWS_AS(parse_format("xml"), UsageError);
  SuiteConfig c;
  c.R = {-1.0};
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = {};
  c.tol = 0.0;
  CHECK_THROWS_AS(c.validate(), UsageError);
  CHECK(suite_name(parse_suite("mellin_ratio")) == "mellin_ratio");
}

TEST_CASE("sampler is reproducible and stream separated") {
  Sampler a(7, 0), b(7, 0), c(7, 1);
  const double x = a.uniform();
  CHECK(x == b.uniform());
  CHECK(x != c.uniform());
}

TEST_CASE("a cheap suite is deterministic") {
  SuiteConfig cfg;
  cfg.suite = Suite::lemma;
  CHECK(to_json(run_suite(cfg), false) == to_json(run_suite(cfg), false));
}

TEST_CASE("the report writer surfaces the path on I/O failure") {
  try {
    emit_report(one_check(true), Format::json, "/nonexistent-dir/x.json");
    FAIL("expected an exception");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/x.json") != std::string::npos);
  }
}

TEST_CASE("worker count leaves numerical fields stable to 1e-13") {
  SuiteConfig cfg;
  cfg.suite = Suite::corollary;
  cfg.samples = 2;
  const auto one = run_suite(cfg);
  cfg.workers = 2;
  const auto two = run_suite(cfg);
  REQUIRE(one.checks.size() == two.checks.size());
  for (std::size_t i = 0; i < one.checks.size(); ++i) {
    const auto& a = one.checks[i].computed;
    const auto& b = two.checks[i].computed;
    for (const char* part : {"re", "im"}) {
      const double x = a[part].get<double>(), y = b[part].get<double>();
      CHECK(std::abs(x - y) <= 1e-13 * std::max(1.0, std::abs(x)));
    }
  }
}

TEST_CASE("lemma report matches the golden file") {
  std::ifstream in(CONEKIT_GOLDEN_DIR "/lemma_seed7.json");
  REQUIRE(in.good());
  std::stringstream golden;
  golden << in.rdbuf();
  SuiteConfig cfg;
  cfg.suite = Suite::lemma;
  CHECK(to_json(run_suite(cfg), false) == golden.str());
}
