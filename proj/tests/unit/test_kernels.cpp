#include <cmath>
#include <numbers>

#include "conekit/kernels.hpp"
#include "conekit/special_functions.hpp"
#include "doctest.h"

using namespace conekit;

TEST_CASE("Psi_0 and Phi_0^+ branches") {
  // mpmath: Y0(2), -2/pi K0(2), J0(2)
  CHECK(psi0(0.5) == doctest::Approx(0.51037567264974511).epsilon(1e-13));
  CHECK(psi0(-0.5) == doctest::Approx(-2.0 / std::numbers::pi * 0.11389387274953344).epsilon(1e-13));
  CHECK(phi0_plus(0.5) == doctest::Approx(0.22389077914123567).epsilon(1e-13));
  CHECK(phi0_plus(-0.5) == 0.0);
  CHECK_THROWS(psi0(0.0));
}

TEST_CASE("closed-form branches are conjugate in the eps sign") {
  for (int s : {-1, 1})
    for (double q : {-3.0, -0.4, 0.4, 3.0}) {
      const cplx a = ft_closed_form(1.3, q, s, 1), b = ft_closed_form(1.3, q, s, -1);
      CHECK(std::abs(a - std::conj(b)) < 1e-14 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("QuadratureSpec validation") {
  QuadratureSpec s;
  CHECK_NOTHROW(s.validate());
  s.abs_tol = 0;
  CHECK_THROWS(s.validate());
  s = {};
  s.epsilon_ladder.clear();
  CHECK_THROWS(s.validate());
}

TEST_CASE("least-squares extrapolation recovers a polynomial") {
  const std::vector<double> h = {0.4, 0.2, 0.1, 0.05};
  std::vector<cplx> y;
  for (double x : h) y.push_back(cplx(2.0 - 3 * x + x * x, 1.0 + x));
  const auto e = extrapolate_basis(h, y, {[](double) { return 1.0; }, [](double x) { return x; },
                                          [](double x) { return x * x; }});
  CHECK(std::abs(e.value - cplx(2.0, 1.0)) < 1e-12);
}
