// verify <suite> [options]: runs a verification suite and writes its report.
// Exit status: 0 all checks pass, 1 a check failed, 2 usage error,
// 3 numerical non-convergence.
#include <iostream>

#include "CLI11.hpp"
#include "conekit/quadrature.hpp"
#include "conekit/report.hpp"

namespace rep = conekit::report;

int main(int argc, char** argv) {
  CLI::App app{"Run a conekit verification suite"};
  std::string suite, format = "json", out, parity = "both";
  std::vector<double> rho, R;
  std::optional<double> tol;
  std::optional<int> samples;
  std::uint64_t seed = 7;
  unsigned workers = 1;

  app.add_option("suite", suite, "bessel, kernels, fourier, corollary, lemma, operators, mellin_ratio, ktypes or all")
      ->required();
  app.add_option("--rho", rho, "Mellin parameters")->delimiter(',');
  app.add_option("--R", R, "cutoff radii")->delimiter(',');
  app.add_option("--eps-parity", parity, "0, 1 or both")->check(CLI::IsMember({"0", "1", "both"}));
  app.add_option("--tol", tol, "replaces every check tolerance");
  app.add_option("--samples", samples, "number of random samples per sampling check");
  app.add_option("--seed", seed, "seed of the point sampler");
  app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", out, "output path, - for stdout");
  app.add_option("--workers", workers, "quadrature worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    rep::SuiteConfig cfg;
    cfg.suite = rep::parse_suite(suite);
    if (!rho.empty()) cfg.rho = rho;
    if (!R.empty()) cfg.R = R;
    if (parity != "both") cfg.parities = {std::stoi(parity)};
    cfg.tol = tol;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.format = rep::parse_format(format);
    cfg.workers = workers;
    cfg.validate();

    const auto report = rep::run_suite(cfg);
    rep::emit_report(report, cfg.format, out);
    return report.all_pass() ? 0 : 1;
  } catch (const rep::UsageError& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return 2;
  } catch (const conekit::ConvergenceError& e) {
    std::cerr << "verify: numerical non-convergence: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return 3;
  }
}
