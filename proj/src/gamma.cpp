#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "conekit/special_functions.hpp"

namespace conekit {

namespace {

using cplx = std::complex<double>;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// sin(pi x), cos(pi x) with exact argument reduction.
void sincospi(double x, double& s, double& c) {
  double r = std::remainder(x, 2.0);  // r in [-1, 1]
  double sign = 1.0;
  if (r > 0.5) {
    r = 1.0 - r;
    sign = -1.0;
  } else if (r < -0.5) {
    r = -1.0 - r;
    sign = -1.0;
  }
  s = std::sin(std::numbers::pi * r);
  c = sign * std::cos(std::numbers::pi * r);
}

cplx sin_pi(cplx z) {
  double s, c;
  sincospi(z.real(), s, c);
  const double y = std::numbers::pi * z.imag();
  return {s * std::cosh(y), c * std::sinh(y)};
}

bool is_pole(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

cplx log_gamma_right(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

cplx gamma_complex(cplx z) {
  if (is_pole(z)) throw std::domain_error("gamma_complex: pole at a nonpositive integer");
  if (z.real() < 0.5) return std::numbers::pi / (sin_pi(z) * std::exp(log_gamma_right(1.0 - z)));
  return std::exp(log_gamma_right(z));
}

cplx log_gamma_complex(cplx z) {
  if (is_pole(z)) throw std::domain_error("log_gamma_complex: pole at a nonpositive integer");
  if (z.real() < 0.5) return std::log(std::numbers::pi) - std::log(sin_pi(z)) - log_gamma_right(1.0 - z);
  return log_gamma_right(z);
}

}  // namespace conekit
