#include <cmath>
#include <numbers>

#include "conekit/mellin.hpp"
#include "conekit/special_functions.hpp"
#include "doctest.h"

using namespace conekit;

TEST_CASE("reference ratio, frozen from mpmath") {
  struct Row { double rho, R; int eps; cplx v; };
  const Row rows[] = {
      {1.0, 1.0, 0, {0.20002890207963928, -1.0718260229867285}},
      {0.3, 0.5, 1, {1.1833160644622731, -1.2985015238362882}},
      {2.0, 2.0, 0, {0.25093546829933032, 0.0}},
  };
  for (const auto& r : rows) {
    CAPTURE(r.rho);
    CHECK(std::abs(reference_ratio(r.rho, r.R, r.eps) - r.v) < 1e-13 * std::abs(r.v));
  }
}

TEST_CASE("Mellin transform of exp(-s) is Gamma(1 - i rho)") {
  for (double rho : {0.0, 0.7, 2.0}) {
    const auto m = mellin([](double s) { return cplx(std::exp(-s)); }, rho, MellinWindow{0.0, 1.0, 3.0, 27.0 * std::exp(-3.0)});
    CHECK(std::abs(m.value - gamma_complex({1.0, -rho})) < 1e-8);
  }
}

TEST_CASE("Gamma chain identities") {
  for (double rho : {0.05, 0.9, 2.7})
    for (int eps : {0, 1})
      for (const auto& id : gamma_chain_identities(rho, eps)) {
        CAPTURE(id.name);
        CHECK(id.rel_error() < 1e-10);
      }
}

TEST_CASE("t^2 exp(-a t) sin/cos integrals") {
  for (double b : {0.3, 1.0, 4.0}) CHECK(damped_trig_moments(1.5, b).max_error() < 1e-9);
}

TEST_CASE("ratio exponent is 4l with l = -1/2 + i rho/2") {
  CHECK(std::abs(ratio_exponent(0.8) - cplx(-2.0, 1.6)) < 1e-15);
}

TEST_CASE("closed-form ratio verdict is theta independent and exact") {
  const auto v = verify_ratio(0.7, 2.0, 1, RatioMode::closed_form);
  CHECK(v.rel_error < 1e-8);
}
