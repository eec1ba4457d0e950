// Named verification suites and their structured reports.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace conekit::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kGenerator = "mt19937_64, u = (x >> 11) * 2^-53";

enum class Suite { bessel, kernels, fourier, corollary, lemma, operators, mellin_ratio, ktypes, all };
enum class Format { json, csv, text };

// Malformed configuration; the CLI maps it to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Suite parse_suite(const std::string& name);
std::string suite_name(Suite s);
Format parse_format(const std::string& name);

struct SuiteConfig {
  Suite suite = Suite::all;
  std::vector<double> rho = {0.3, 0.7, 1.0, 2.0};
  std::vector<double> R = {0.5, 1.0, 2.0};
  std::vector<int> parities = {0, 1};
  // Replaces every check's tolerance when set.
  std::optional<double> tol;
  // Overrides the number of random samples of the sampling checks.
  std::optional<int> samples;
  std::uint64_t seed = 7;
  Format format = Format::json;
  unsigned workers = 1;

  void validate() const;
  Json echo() const;
};

struct CheckRecord {
  std::string check_id;
  std::string paper_anchor;
  Json parameters = Json::object();
  Json computed;
  Json reference;
  double abs_error = 0.0;
  double rel_error = 0.0;
  double tolerance = 0.0;
  // Which of abs_error / rel_error is held against the tolerance.
  std::string metric = "rel";
  bool pass = false;
  bool skipped = false;
};

struct VerificationReport {
  std::string suite;
  Json config_echo;
  std::vector<CheckRecord> checks;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  double wall_ms = 0.0;

  bool all_pass() const { return failed == 0; }
};

VerificationReport run_suite(const SuiteConfig& cfg);

// Deterministic serializations; floating-point numbers are written with 16
// significant digits.
std::string to_json(const VerificationReport& rep, bool include_wall_time = true);
std::string to_csv(const VerificationReport& rep);
std::string to_text(const VerificationReport& rep);
std::string render(const VerificationReport& rep, Format format);

// Writes to `path`, or to stdout when path is empty or "-".
void emit_report(const VerificationReport& rep, Format format, const std::string& path);

// Structural validation of a parsed JSON report; returns the list of problems.
std::vector<std::string> validate_report_json(const Json& j);

// Deterministic uniform sampling from the seed.
class Sampler {
 public:
  // Each suite draws from its own stream so that a suite gives the same
  // points alone and inside `all`.
  Sampler(std::uint64_t seed, std::uint64_t stream) : engine_(seed ^ (0x9E3779B97F4A7C15ull * (stream + 1))) {}
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }  // [0, 1)
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double log_uniform(double a, double b);
  int sign() { return uniform() < 0.5 ? 1 : -1; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace conekit::report
