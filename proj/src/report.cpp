#include "conekit/report.hpp"

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "suite_detail.hpp"

namespace conekit::report {

namespace {

const std::vector<std::pair<Suite, std::string>>& suite_names() {
  static const std::vector<std::pair<Suite, std::string>> names = {
      {Suite::bessel, "bessel"},       {Suite::kernels, "kernels"},     {Suite::fourier, "fourier"},
      {Suite::corollary, "corollary"}, {Suite::lemma, "lemma"},         {Suite::operators, "operators"},
      {Suite::mellin_ratio, "mellin_ratio"}, {Suite::ktypes, "ktypes"}, {Suite::all, "all"},
  };
  return names;
}

std::string number(double x) {
  if (std::isnan(x)) return "\"nan\"";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15e", x);
  return buf;
}

// nlohmann's dump prints the shortest round-trip form; reports want a fixed
// width so that golden files diff cleanly.
void write_json(std::ostringstream& os, const Json& j, int indent, int depth) {
  const std::string pad(std::size_t(indent * (depth + 1)), ' '), close(std::size_t(indent * depth), ' ');
  const char* nl = indent ? "\n" : "";
  const char* sep = indent ? ": " : ":";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad << Json(k).dump() << sep;
        write_json(os, v, indent, depth + 1);
      }
      os << nl << close << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[' << nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ',' << nl;
        os << pad;
        write_json(os, j[i], indent, depth + 1);
      }
      os << nl << close << ']';
      return;
    }
    case Json::value_t::number_float:
      os << number(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

std::string dump(const Json& j, int indent) {
  std::ostringstream os;
  write_json(os, j, indent, 0);
  return os.str();
}

Json number_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json check_json(const CheckRecord& c) {
  Json j;
  j["check_id"] = c.check_id;
  j["paper_anchor"] = c.paper_anchor;
  j["parameters"] = c.parameters;
  j["computed"] = c.computed;
  j["reference"] = c.reference;
  j["abs_error"] = number_json(c.abs_error);
  j["rel_error"] = number_json(c.rel_error);
  j["tolerance"] = number_json(c.tolerance);
  j["metric"] = c.metric;
  j["pass"] = c.pass;
  j["skipped"] = c.skipped;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace

Suite parse_suite(const std::string& name) {
  for (const auto& [s, n] : suite_names())
    if (n == name) return s;
  throw UsageError("unknown suite '" + name + "'");
}

std::string suite_name(Suite s) {
  for (const auto& [t, n] : suite_names())
    if (t == s) return n;
  throw std::logic_error("suite without a name");
}

Format parse_format(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "text") return Format::text;
  throw UsageError("unknown format '" + name + "' (json, csv or text)");
}

void SuiteConfig::validate() const {
  if (rho.empty()) throw UsageError("--rho needs at least one value");
  for (double v : rho)
    if (!std::isfinite(v) || v == 0.0) throw UsageError("--rho values must be finite and nonzero");
  if (R.empty()) throw UsageError("--R needs at least one value");
  for (double v : R)
    if (!std::isfinite(v) || !(v > 0)) throw UsageError("--R values must be positive");
  if (parities.empty()) throw UsageError("--eps-parity needs 0, 1 or both");
  for (int p : parities)
    if (p != 0 && p != 1) throw UsageError("--eps-parity must be 0, 1 or both");
  if (tol && (!std::isfinite(*tol) || !(*tol > 0))) throw UsageError("--tol must be positive");
  if (samples && *samples < 1) throw UsageError("--samples must be at least 1");
  if (workers < 1) throw UsageError("--workers must be at least 1");
}

Json SuiteConfig::echo() const {
  Json j;
  j["suite"] = suite_name(suite);
  j["rho"] = rho;
  j["R"] = R;
  j["eps_parity"] = parities;
  j["tol"] = tol ? Json(*tol) : Json(nullptr);
  j["samples"] = samples ? Json(*samples) : Json(nullptr);
  j["seed"] = seed;
  j["format"] = format == Format::json ? "json" : format == Format::csv ? "csv" : "text";
  j["workers"] = workers;
  j["generator"] = kGenerator;
  return j;
}

double Sampler::log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }

VerificationReport run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.suite = suite_name(cfg.suite);
  rep.config_echo = cfg.echo();
  const std::vector<Suite> order = {Suite::bessel,    Suite::kernels,      Suite::fourier, Suite::corollary,
                                    Suite::lemma,     Suite::operators,    Suite::mellin_ratio, Suite::ktypes};
  for (Suite s : order) {
    if (cfg.suite != Suite::all && cfg.suite != s) continue;
    auto checks = detail::run_single(s, cfg);
    rep.checks.insert(rep.checks.end(), std::make_move_iterator(checks.begin()), std::make_move_iterator(checks.end()));
  }
  std::stable_sort(rep.checks.begin(), rep.checks.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.check_id < b.check_id; });
  for (const auto& c : rep.checks) {
    if (c.skipped)
      ++rep.skipped;
    else if (c.pass)
      ++rep.passed;
    else
      ++rep.failed;
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::string to_json(const VerificationReport& rep, bool include_wall_time) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["suite"] = rep.suite;
  j["config_echo"] = rep.config_echo;
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back(check_json(c));
  j["checks"] = std::move(checks);
  j["summary"] = {{"passed", rep.passed}, {"failed", rep.failed}, {"skipped", rep.skipped}};
  if (include_wall_time) j["wall_ms"] = rep.wall_ms;
  return dump(j, 2) + "\n";
}

std::string to_csv(const VerificationReport& rep) {
  std::ostringstream os;
  os << "check_id,paper_anchor,parameters,computed,reference,abs_error,rel_error,tolerance,metric,pass,skipped\n";
  for (const auto& c : rep.checks) {
    os << csv_field(c.check_id) << ',' << csv_field(c.paper_anchor) << ',' << csv_field(dump(c.parameters, 0)) << ','
       << csv_field(dump(c.computed, 0)) << ',' << csv_field(dump(c.reference, 0)) << ','
       << dump(number_json(c.abs_error), 0) << ',' << dump(number_json(c.rel_error), 0) << ','
       << dump(number_json(c.tolerance), 0) << ',' << c.metric << ',' << (c.pass ? "true" : "false") << ','
       << (c.skipped ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string to_text(const VerificationReport& rep) {
  std::size_t width = 8;
  for (const auto& c : rep.checks) width = std::max(width, c.check_id.size());
  std::ostringstream os;
  os << "suite " << rep.suite << "\n";
  for (const auto& c : rep.checks) {
    const char* verdict = c.skipped ? "SKIP" : c.pass ? "PASS" : "FAIL";
    const double err = c.metric == "rel" ? c.rel_error : c.abs_error;
    os << verdict << "  " << c.check_id << std::string(width - c.check_id.size() + 2, ' ') << c.metric << ' '
       << short_number(err) << " <= " << short_number(c.tolerance) << "  [" << c.paper_anchor << "]\n";
  }
  os << "passed " << rep.passed << ", failed " << rep.failed << ", skipped " << rep.skipped << " ("
     << short_number(rep.wall_ms / 1000.0) << " s)\n";
  return os.str();
}

std::string render(const VerificationReport& rep, Format format) {
  switch (format) {
    case Format::json: return to_json(rep);
    case Format::csv: return to_csv(rep);
    case Format::text: return to_text(rep);
  }
  return {};
}

void emit_report(const VerificationReport& rep, Format format, const std::string& path) {
  const std::string body = render(rep, format);
  if (path.empty() || path == "-") {
    std::cout << body << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open report file '" + path + "': " + std::strerror(errno));
  out << body;
  out.flush();
  if (!out) throw std::runtime_error("failed writing report file '" + path + "'");
}

std::vector<std::string> validate_report_json(const Json& j) {
  std::vector<std::string> problems;
  auto need = [&](const Json& obj, const char* key, auto pred, const std::string& where) {
    if (!obj.contains(key)) {
      problems.push_back(where + ": missing '" + key + "'");
      return false;
    }
    if (!pred(obj.at(key))) {
      problems.push_back(where + ": bad type for '" + key + "'");
      return false;
    }
    return true;
  };
  auto is_int = [](const Json& v) { return v.is_number_integer(); };
  auto is_str = [](const Json& v) { return v.is_string(); };
  auto is_obj = [](const Json& v) { return v.is_object(); };
  auto is_bool = [](const Json& v) { return v.is_boolean(); };
  auto is_num = [](const Json& v) {
    return v.is_number() || (v.is_string() && (v == "inf" || v == "-inf" || v == "nan"));
  };
  if (!j.is_object()) return {"report is not a JSON object"};
  if (need(j, "schema_version", is_int, "report") && j["schema_version"] != kSchemaVersion)
    problems.push_back("report: unsupported schema_version");
  need(j, "suite", is_str, "report");
  need(j, "config_echo", is_obj, "report");
  need(j, "wall_ms", [](const Json& v) { return v.is_number(); }, "report");
  int passed = 0, failed = 0, skipped = 0;
  if (need(j, "checks", [](const Json& v) { return v.is_array(); }, "report")) {
    for (std::size_t i = 0; i < j["checks"].size(); ++i) {
      const Json& c = j["checks"][i];
      const std::string where = "checks[" + std::to_string(i) + "]";
      if (!c.is_object()) {
        problems.push_back(where + ": not an object");
        continue;
      }
      need(c, "check_id", is_str, where);
      if (need(c, "paper_anchor", is_str, where) && c["paper_anchor"].get<std::string>().empty())
        problems.push_back(where + ": empty paper_anchor");
      need(c, "parameters", is_obj, where);
      if (!c.contains("computed")) problems.push_back(where + ": missing 'computed'");
      if (!c.contains("reference")) problems.push_back(where + ": missing 'reference'");
      need(c, "abs_error", is_num, where);
      need(c, "rel_error", is_num, where);
      need(c, "tolerance", is_num, where);
      need(c, "metric", is_str, where);
      const bool has_pass = need(c, "pass", is_bool, where);
      const bool has_skip = need(c, "skipped", is_bool, where);
      if (has_pass && has_skip) {
        if (c["skipped"].get<bool>())
          ++skipped;
        else if (c["pass"].get<bool>())
          ++passed;
        else
          ++failed;
      }
    }
  }
  if (need(j, "summary", is_obj, "report")) {
    const Json& s = j["summary"];
    if (need(s, "passed", is_int, "summary") && s["passed"] != passed) problems.push_back("summary: passed count mismatch");
    if (need(s, "failed", is_int, "summary") && s["failed"] != failed) problems.push_back("summary: failed count mismatch");
    if (need(s, "skipped", is_int, "summary") && s["skipped"] != skipped)
      problems.push_back("summary: skipped count mismatch");
  }
  return problems;
}

}  // namespace conekit::report
