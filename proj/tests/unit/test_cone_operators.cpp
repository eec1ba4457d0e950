#include <cmath>
#include <numbers>

#include "conekit/cone_operators.hpp"
#include "doctest.h"

using namespace conekit;

TEST_CASE("decay certificates") {
  DecayCertificate e{DecayKind::exponential, 1.0, 0.0, 1.0, 2.0};
  CHECK(e.bound(3.0) == doctest::Approx(std::exp(-9.0)));
  const double V = e.truncation_radius(1e-10, 0.0);
  CHECK(V > 3.0);
  DecayCertificate c{DecayKind::compact_support};
  c.r_max = 2.0;
  CHECK(c.bound(2.5) == 0.0);
}

TEST_CASE("test function parity") {
  const auto f = make_f_xi_eps(ConePoint{1.0, 0.3, 1.1}, 1, RadialProfile::exp_sqrt);
  const ConePoint p{0.8, 0.3 + 0.1, 1.1 + std::numbers::pi - 0.2};
  const ConePoint q{0.8, p.theta1 + std::numbers::pi, p.theta2 + std::numbers::pi};
  CHECK(std::abs(f(p) + f(q)) <= 1e-13 * std::abs(f(p)) + 1e-300);
}

TEST_CASE("PlHat' of a positive-pairing bump vanishes") {
  // Supported where <xi, xi'> > 0 for xi on the base ray.
  ConeFunction f;
  f.eval = [](double r, double t1, double t2) -> cplx {
    const double d = std::hypot(std::remainder(t1 - 0.0, 2 * std::numbers::pi), std::remainder(t2 - std::numbers::pi, 2 * std::numbers::pi));
    return d < 0.5 ? std::exp(-r * r) * std::pow(std::cos(d * std::numbers::pi), 2) : 0.0;
  };
  f.decay = {DecayKind::exponential, 1.0, 0.0, 1.0, 2.0};
  f.support = {AngularPatch{AngularPatch::disc, 0.0, std::numbers::pi, 0.5, 0.5}};
  const auto v = op_PlHatPrime(f, 1.0, ConePoint{1.0, 0.0, 0.0});
  CHECK(std::abs(v.value) < 1e-12);
}
