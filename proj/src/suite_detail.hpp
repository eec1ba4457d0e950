// Shared plumbing of the verification suites.
#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "conekit/report.hpp"

namespace conekit::report::detail {

using cplx = std::complex<double>;

std::vector<CheckRecord> run_single(Suite s, const SuiteConfig& cfg);

std::vector<CheckRecord> bessel_suite(const SuiteConfig& cfg);
std::vector<CheckRecord> kernels_suite(const SuiteConfig& cfg);
std::vector<CheckRecord> fourier_suite(const SuiteConfig& cfg);
std::vector<CheckRecord> corollary_suite(const SuiteConfig& cfg);
std::vector<CheckRecord> lemma_suite(const SuiteConfig& cfg);
std::vector<CheckRecord> operators_suite(const SuiteConfig& cfg);
std::vector<CheckRecord> mellin_ratio_suite(const SuiteConfig& cfg);
std::vector<CheckRecord> ktypes_suite(const SuiteConfig& cfg);

inline Json cjson(cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

// Collects the checks of one suite and applies the configuration overrides.
class CheckSink {
 public:
  CheckSink(const SuiteConfig& cfg, Suite suite)
      : cfg_(cfg), sampler_(cfg.seed, static_cast<std::uint64_t>(suite)) {}

  Sampler& sampler() { return sampler_; }
  const SuiteConfig& config() const { return cfg_; }
  int samples(int fallback) const { return cfg_.samples.value_or(fallback); }

  // rel: |c - r| / |r|; abs: |c - r|.
  CheckRecord& compare(const std::string& id, const std::string& anchor, Json params, cplx computed, cplx reference,
                       double tol, const std::string& metric = "rel") {
    const double abs_err = std::abs(computed - reference);
    const double rel_err = abs_err / std::abs(reference);
    return record(id, anchor, std::move(params), cjson(computed), cjson(reference), abs_err, rel_err, tol, metric);
  }

  CheckRecord& compare(const std::string& id, const std::string& anchor, Json params, double computed, double reference,
                       double tol, const std::string& metric = "rel") {
    const double abs_err = std::abs(computed - reference);
    const double rel_err = abs_err / std::abs(reference);
    return record(id, anchor, std::move(params), computed, reference, abs_err, rel_err, tol, metric);
  }

  CheckRecord& record(const std::string& id, const std::string& anchor, Json params, Json computed, Json reference,
                      double abs_err, double rel_err, double tol, const std::string& metric) {
    CheckRecord c;
    c.check_id = id;
    c.paper_anchor = anchor;
    c.parameters = std::move(params);
    c.computed = std::move(computed);
    c.reference = std::move(reference);
    c.abs_error = abs_err;
    c.rel_error = rel_err;
    c.tolerance = cfg_.tol.value_or(tol);
    c.metric = metric;
    const double err = metric == "rel" ? rel_err : abs_err;
    c.pass = std::isfinite(err) && err <= c.tolerance;
    checks_.push_back(std::move(c));
    return checks_.back();
  }

  // Exact (structural) checks: the error is 0 or 1.
  CheckRecord& exact(const std::string& id, const std::string& anchor, Json params, bool ok, Json computed,
                     Json reference) {
    CheckRecord c;
    c.check_id = id;
    c.paper_anchor = anchor;
    c.parameters = std::move(params);
    c.computed = std::move(computed);
    c.reference = std::move(reference);
    c.abs_error = c.rel_error = ok ? 0.0 : 1.0;
    c.tolerance = 0.0;
    c.metric = "exact";
    c.pass = ok;
    checks_.push_back(std::move(c));
    return checks_.back();
  }

  std::vector<CheckRecord> take() { return std::move(checks_); }

 private:
  const SuiteConfig& cfg_;
  Sampler sampler_;
  std::vector<CheckRecord> checks_;
};

// Zero-padded index for check ids so that lexicographic order is numeric.
inline std::string idx(int i, int width = 2) {
  std::string s = std::to_string(i);
  return std::string(std::size_t(std::max(0, width - int(s.size()))), '0') + s;
}

// Running worst case of an aggregated check.
struct Worst {
  double err = -1.0;
  Json where;
  Json computed, reference;
  double abs_err = 0.0, rel_err = 0.0;

  void update(double e, Json at, Json c, Json r, double a, double rel) {
    if (e > err || std::isnan(e)) {
      err = std::isnan(e) ? INFINITY : e;
      where = std::move(at);
      computed = std::move(c);
      reference = std::move(r);
      abs_err = a;
      rel_err = rel;
    }
  }
};

}  // namespace conekit::report::detail
