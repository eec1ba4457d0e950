// Acceptance criteria 1-10. Each criterion is a set of check-id prefixes from
// the verification suites; it passes when every matching check passes and
// at least one check matched. Criterion 10 drives the verify executable.
//
// usage: acceptance <path to verify> [work dir]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "conekit/report.hpp"

namespace fs = std::filesystem;
namespace rep = conekit::report;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::vector<rep::Suite> suites;
  std::vector<std::string> prefixes;
};

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

int run(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_without_wall_time(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream out;
  for (std::string line; std::getline(in, line);)
    if (line.find("\"wall_ms\"") == std::string::npos) out << line << '\n';
  return out.str();
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <verify executable> [work dir]\n";
    return 2;
  }
  const std::string verify = argv[1];
  const fs::path work = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "conekit_acceptance";
  fs::create_directories(work);

  const std::vector<Criterion> criteria = {
      {1, "Fourier closed forms, 50 samples x 4 branches, max(1e-4 |v|, 1e-5)", {rep::Suite::fourier},
       {"fourier.closed_form."}},
      {2, "corollary kernels, 20 pairs, 1e-6 / 1e-4", {rep::Suite::corollary}, {"corollary."}},
      {3, "oscillatory t-integral identities, 10 points, 1e-3", {rep::Suite::lemma}, {"lemma.identity."}},
      {4, "Mellin ratio, closed form 1e-8, end to end 5e-3", {rep::Suite::mellin_ratio},
       {"mellin.ratio.closed", "mellin.ratio.e2e"}},
      {5, "Gamma chain identities, 10 random rho, 1e-10", {rep::Suite::mellin_ratio}, {"mellin.gamma_chain."}},
      {6, "K-Bessel recurrence 1e-10, derivative relation 1e-6", {rep::Suite::bessel},
       {"bessel.krel.", "bessel.derivative.", "bessel.iterated_derivative."}},
      {7, "rewrite fidelity 1e-7 at 20 points, highest weight exact", {rep::Suite::ktypes},
       {"ktypes.rewrite.", "ktypes.highest_weight"}},
      {8, "orbit closures finite, stable, golden dimensions", {rep::Suite::ktypes}, {"ktypes.orbit."}},
      {9, "delta(C) volume vs surface, 5 Gaussians, 1e-5", {rep::Suite::kernels}, {"kernels.delta_cone.gaussian"}},
  };

  rep::SuiteConfig base;
  std::map<rep::Suite, rep::VerificationReport> reports;
  int failed = 0;
  for (const auto& c : criteria) {
    int matched = 0, bad = 0;
    double worst = 0.0;
    std::string worst_id;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      for (auto s : c.suites) {
        if (!reports.count(s)) {
          rep::SuiteConfig cfg = base;
          cfg.suite = s;
          reports.emplace(s, rep::run_suite(cfg));
        }
        for (const auto& chk : reports.at(s).checks) {
          bool hit = false;
          for (const auto& p : c.prefixes) hit = hit || starts_with(chk.check_id, p);
          if (!hit) continue;
          ++matched;
          const double err = chk.metric == "rel" ? chk.rel_error : chk.abs_error;
          const double ratio = chk.tolerance > 0 ? err / chk.tolerance : err;
          if (!chk.pass) ++bad;
          if (!chk.pass || ratio > worst) worst = std::max(worst, ratio), worst_id = chk.check_id;
        }
      }
    } catch (const std::exception& e) {
      std::printf("criterion %2d FAIL  %s: %s\n", c.number, c.title.c_str(), e.what());
      ++failed;
      continue;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = matched > 0 && bad == 0;
    failed += !ok;
    std::printf("criterion %2d %s  %s: %d checks, %d failed, worst err/tol %.3g (%s) [%.1f s]\n", c.number,
                ok ? "PASS" : "FAIL", c.title.c_str(), matched, bad, worst, worst_id.c_str(), secs);
  }

  // 10: byte-identical fixed-seed reports and the exit-code contract.
  {
    const auto a = work / "run_a.json", b = work / "run_b.json", tight = work / "tight.json";
    const std::string cmd = quote(verify) + " lemma --seed 7 --out ";
    const int ea = run(cmd + quote(a.string()));
    const int eb = run(cmd + quote(b.string()));
    const bool identical = fs::exists(a) && read_without_wall_time(a) == read_without_wall_time(b);
    const int e_tight = run(quote(verify) + " lemma --tol 1e-300 --out " + quote(tight.string()));
    const int e_usage = run(quote(verify) + " no_such_suite --out " + quote((work / "usage.json").string()) +
                            " 2>/dev/null");
    const int e_bad_tol = run(quote(verify) + " lemma --tol -1 2>/dev/null");
    const bool ok = ea == 0 && eb == 0 && identical && e_tight == 1 && e_usage == 2 && e_bad_tol == 2;
    failed += !ok;
    std::printf(
        "criterion 10 %s  determinism and exit codes: runs %d/%d, identical %s, forced failure exit %d, "
        "usage exits %d/%d\n",
        ok ? "PASS" : "FAIL", ea, eb, identical ? "yes" : "no", e_tight, e_usage, e_bad_tol);
  }

  std::printf("%s: %d of 10 criteria failed\n", failed ? "FAIL" : "PASS", failed);
  return failed ? 1 : 0;
}
