#include <cmath>
#include <numbers>
#include <stdexcept>

#include "conekit/special_functions.hpp"

namespace conekit::oracle {

namespace {

void require_positive(double u) {
  if (!(u > 0.0)) throw std::domain_error("oracle: argument must be positive");
}

quad::Estimate<double> cosh_phase(double u, quad::Trig trig, const quad::Tolerance& tol) {
  auto phi = [u](double t) { return u * std::cosh(t); };
  auto dphi = [u](double t) { return u * std::sinh(t); };
  return quad::oscillatory_half_line(phi, dphi, [](double) { return 1.0; }, 0.0, trig, tol);
}

// Upper cutoff where exp(-u cosh t + n t) has dropped below exp(-u - 60).
double exp_cutoff(double u, int n) {
  double t = 1.0;
  while (u * std::cosh(t) - n * t < u + 60.0) t *= 1.25;
  return t;
}

}  // namespace

quad::Estimate<double> j0_integral(double u, const quad::Tolerance& tol) {
  if (u == 0.0) return {1.0, 0.0, 0, true};
  require_positive(u);
  auto est = cosh_phase(u, quad::Trig::sin, {tol.abs * std::numbers::pi / 2, tol.rel, tol.max_intervals});
  est.value *= 2.0 / std::numbers::pi;
  est.error *= 2.0 / std::numbers::pi;
  return est;
}

quad::Estimate<double> y0_integral(double u, const quad::Tolerance& tol) {
  require_positive(u);
  auto est = cosh_phase(u, quad::Trig::cos, {tol.abs * std::numbers::pi / 2, tol.rel, tol.max_intervals});
  est.value *= -2.0 / std::numbers::pi;
  est.error *= 2.0 / std::numbers::pi;
  return est;
}

quad::Estimate<double> k0_cos_integral(double u, const quad::Tolerance& tol) {
  require_positive(u);
  auto phi = [u](double t) { return u * std::sinh(t); };
  auto dphi = [u](double t) { return u * std::cosh(t); };
  return quad::oscillatory_half_line(phi, dphi, [](double) { return 1.0; }, 0.0, quad::Trig::cos, tol);
}

quad::Estimate<double> k0_exp_integral(double u, const quad::Tolerance& tol) { return kn_exp_integral(0, u, tol); }

quad::Estimate<double> kn_exp_integral(int n, double u, const quad::Tolerance& tol) {
  require_positive(u);
  n = std::abs(n);
  const double T = exp_cutoff(u, n);
  return quad::integrate([&](double t) { return std::exp(-u * std::cosh(t)) * std::cosh(n * t); }, 0.0, T, tol);
}

}  // namespace conekit::oracle
