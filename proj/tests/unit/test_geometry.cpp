#include <cmath>
#include <numbers>
#include <random>

#include "conekit/geometry.hpp"
#include "doctest.h"

using namespace conekit;

TEST_CASE("norm has signature (2,2)") {
  CHECK(norm(SplitQuaternion<double>(1, 0, 0, 0)) == 1.0);
  CHECK(norm(SplitQuaternion<double>(0, 0, 1, 0)) == -1.0);
  CHECK(norm(SplitQuaternion<double>(1, 2, 3, 4)) == 1 + 4 - 9 - 16);
}

TEST_CASE("cone chart round trip and null vectors") {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const ConePoint p{0.1 + 3 * u(g), 2 * std::numbers::pi * u(g), 2 * std::numbers::pi * u(g)};
    const auto xi = cone_embed(p);
    const double n = xi[0] * xi[0] + xi[1] * xi[1] - xi[2] * xi[2] - xi[3] * xi[3];
    CHECK(std::abs(n) < 1e-12 * p.r * p.r);
    const ConePoint q = to_cone_point(xi);
    CHECK(q.r == doctest::Approx(p.r).epsilon(1e-14));
    CHECK(std::cos(q.theta1 - p.theta1) == doctest::Approx(1.0));
    CHECK(std::cos(q.theta2 - p.theta2) == doctest::Approx(1.0));
  }
}

TEST_CASE("pairing of cone points is minus half the norm of the difference") {
  const ConePoint a{1.3, 0.2, 2.9}, b{0.7, 4.1, 1.0};
  const auto d = cone_embed(a) - cone_embed(b);
  const double n = d[0] * d[0] + d[1] * d[1] - d[2] * d[2] - d[3] * d[3];
  CHECK(cone_pair(a, b) == doctest::Approx(-0.5 * n).epsilon(1e-13));
}

TEST_CASE("w0 is an involution away from the cone") {
  auto phi = [](const SplitQuaternion<double>& X) { return std::exp(-X.x.squaredNorm()) * (1 + X.x[1]); };
  const SplitQuaternion<double> X(1.2, -0.4, 0.3, 0.5);
  auto once = [&](const SplitQuaternion<double>& Y) { return w0_act(phi, Y); };
  CHECK(w0_act(once, X) == doctest::Approx(phi(X)).epsilon(1e-13));
}

TEST_CASE("w0 rejects the cone and the chart rejects r = 0") {
  auto one = [](const SplitQuaternion<double>&) { return 1.0; };
  CHECK_THROWS_AS(w0_act(one, SplitQuaternion<double>(1, 0, 1, 0)), std::domain_error);
  CHECK_THROWS(cone_embed(ConePoint{0.0, 0.0, 0.0}));
}

TEST_CASE("measure densities") {
  CHECK(cone_measure_weight(ConePoint{2.0, 0, 0}) == 2.0);
  CHECK(delta_cone_weight(ConePoint{2.0, 0, 0}) == 1.0);
}
