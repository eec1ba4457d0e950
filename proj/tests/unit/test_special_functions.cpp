// Reference values frozen from mpmath at 30 digits.
#include <cmath>
#include <complex>

#include "conekit/special_functions.hpp"
#include "doctest.h"

using namespace conekit;

namespace {
bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }
}  // namespace

TEST_CASE("J0 and Y0 across the series and asymptotic branches") {
  struct Row { double u, j0, y0; };
  const Row rows[] = {
      {0.3, 0.97762624653829609, -0.80727357780451949},
      {2.5, -0.048383776468197996, 0.49807035961523189},
      {11.0, -0.17119030040719609, -0.16884732389207954},
      {40.0, 0.0073668905842372896, 0.12593641705826093},
  };
  for (const auto& r : rows) {
    CAPTURE(r.u);
    CHECK(std::abs(bessel_j0(r.u) - r.j0) < 1e-13);
    CHECK(std::abs(bessel_y0(r.u) - r.y0) < 1e-13);
  }
}

TEST_CASE("K0 and K1 to near machine precision") {
  struct Row { double u, k0, k1; };
  const Row rows[] = {
      {0.05, 3.1142340294719898, 19.909674325882505},
      {1.7, 0.16549631805699655, 0.20936248820408249},
      {9.0, 5.0881312956459248e-5, 5.3637016379451945e-5},
      {60.0, 1.4138978405591078e-27, 1.4256320265171043e-27},
  };
  for (const auto& r : rows) {
    CAPTURE(r.u);
    CHECK(close(bessel_k0(r.u), r.k0, 1e-13));
    CHECK(close(bessel_k1(r.u), r.k1, 1e-13));
  }
}

TEST_CASE("renormalized K for negative, zero and positive index") {
  CHECK(close(ktilde(-3, 0.8), 0.92549040586905043, 1e-13));
  CHECK(close(ktilde(0, 0.8), 0.56534710526589567, 1e-13));
  CHECK(close(ktilde(2, 0.8), 16.998757446539666, 1e-13));
  CHECK(close(ktilde(5, 0.8), 109982.2137581993, 1e-13));
}

TEST_CASE("K recurrence holds over the index range") {
  // r^2 Kt_n(2r) = (n-1) Kt_{n-1}(2r) + Kt_{n-2}(2r)
  for (int n = -5; n <= 5; ++n)
    for (double r : {0.1, 0.7, 2.0, 5.0}) {
      const double lhs = r * r * ktilde(n, 2 * r);
      const double rhs = (n - 1) * ktilde(n - 1, 2 * r) + ktilde(n - 2, 2 * r);
      CAPTURE(n);
      CAPTURE(r);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(std::abs(lhs), 1.0));
    }
}

TEST_CASE("complex Gamma") {
  using C = std::complex<double>;
  const std::pair<C, C> rows[] = {
      {{0.5, 0}, {1.772453850905516, 0}},
      {{0.3, 1.2}, {0.10707547496255364, -0.35314398772908862}},
      {{-2.5, 0.7}, {-0.15981871636293293, -0.15756654908151528}},
      {{7, -3}, {311.63555809952227, 197.5697769544012}},
  };
  for (const auto& [z, g] : rows) {
    CAPTURE(z);
    CHECK(std::abs(gamma_complex(z) - g) <= 1e-13 * std::abs(g));
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS(ktilde(1, 0.0));
  CHECK_THROWS(ktilde(1, -1.0));
}
