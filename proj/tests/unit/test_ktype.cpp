#include <random>

#include "conekit/embedding.hpp"
#include "conekit/ktype.hpp"
#include "doctest.h"

using namespace conekit;
using namespace conekit::ktype;

TEST_CASE("Gaussian rationals are exact") {
  const GaussianRational a(Rational(1, 3), Rational(2)), b(Rational(-1, 2), Rational(1, 5));
  CHECK((a * b) / b == a);
  CHECK((a - a).is_zero());
}

TEST_CASE("highest-weight vectors are annihilated") {
  for (int l = 0; l <= 3; ++l)
    for (int k = 0; k <= 3; ++k) {
      CHECK(apply_raise_lower(1, 1, KVector(KBasisElement{k, l, k})).is_zero());
      CHECK(apply_raise_lower(2, 1, KVector(KBasisElement{l, l, k})).is_zero());
    }
}

TEST_CASE("closed raising/lowering equals the composition") {
  for (int s1 : {1, -1})
    for (int sign : {1, -1}) {
      const KVector v(KBasisElement{-1, 2, 3, s1, -1});
      CHECK(apply_raise_lower(1, sign, v) == apply_raise_lower_composed(1, sign, v));
      CHECK(apply_raise_lower(2, sign, v) == apply_raise_lower_composed(2, sign, v));
    }
}

TEST_CASE("symbolic r^2 reduces to the reduced rewrite") {
  const KVector v(KBasisElement{0, 2, 1, 1, 1});
  for (int j = 1; j <= 4; ++j) CHECK(reduce(apply_P(j, v, RewriteOptions{false})) == apply_P(j, v));
}

TEST_CASE("rewrite rules agree with the ambient oracle") {
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> u(0.0, 6.28);
  const KBasisElement b{-1, 2, 1, -1, 1};
  for (int i = 0; i < 5; ++i) {
    const ConePoint p{0.5 + u(g) / 4, u(g), u(g)};
    const auto x = cone_embed(p).xi;
    const Jet F = ambient_jet(b, x);
    for (int j = 1; j <= 4; ++j) {
      const cplx want = ambient_P(j, F, x), got = apply_P(j, KVector(b)).evaluate(p);
      CHECK(std::abs(got - want) <= 1e-9 * std::max(std::abs(want), std::abs(F.v)));
    }
    CHECK(std::abs(apply_deg(KVector(b)).evaluate(p) - ambient_deg(F, x)) <= 1e-9 * std::abs(F.v) + 1e-12);
  }
}

TEST_CASE("orbit closure of the trivial K-type") {
  const auto c = kfinite_certificate(KBasisElement{0, 0, 0});
  CHECK(c.in_l2);
  CHECK(c.closure_finite);
  CHECK(c.dimension == 1);
  CHECK_FALSE(KBasisElement{1, 0, 2}.in_l2());
}

TEST_CASE("split-quaternion matrix identity on a polynomial") {
  const Vector4<double> x(0.3, -1.1, 0.8, 2.0);
  auto X = [&](int i) { return Jet::coordinate(x, i); };
  const Jet phi = X(0) * X(3) + X(2).scaled(cplx(0, 2)) + Jet::constant(1.0);
  CHECK(x_dx_identity(phi, x).residual < 1e-12);
}
