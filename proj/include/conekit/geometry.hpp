// Split quaternions realized as R^{2,2}, the dual cone and its bipolar chart.
#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <type_traits>

namespace conekit {

template <typename Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;

template <typename Scalar = double>
struct SplitQuaternion {
  Vector4<Scalar> x = Vector4<Scalar>::Zero();

  SplitQuaternion() = default;
  SplitQuaternion(Scalar x1, Scalar x2, Scalar x3, Scalar x4) : x(x1, x2, x3, x4) {}
  explicit SplitQuaternion(const Vector4<Scalar>& v) : x(v) {}

  Scalar operator[](int i) const { return x[i]; }
};

template <typename Scalar = double>
struct DualVector {
  Vector4<Scalar> xi = Vector4<Scalar>::Zero();

  DualVector() = default;
  DualVector(Scalar a, Scalar b, Scalar c, Scalar d) : xi(a, b, c, d) {}
  explicit DualVector(const Vector4<Scalar>& v) : xi(v) {}

  Scalar operator[](int i) const { return xi[i]; }
  DualVector operator-(const DualVector& o) const { return DualVector(Vector4<Scalar>(xi - o.xi)); }
  DualVector operator+(const DualVector& o) const { return DualVector(Vector4<Scalar>(xi + o.xi)); }
};

template <typename Scalar>
DualVector<Scalar> operator*(Scalar a, const DualVector<Scalar>& v) {
  return DualVector<Scalar>(Vector4<Scalar>(a * v.xi));
}

template <typename Scalar>
SplitQuaternion<Scalar> operator*(Scalar a, const SplitQuaternion<Scalar>& v) {
  return SplitQuaternion<Scalar>(Vector4<Scalar>(a * v.x));
}

// Bipolar coordinates on C* \ {0}: xi = r (cos t1, sin t1, cos t2, sin t2).
struct ConePoint {
  double r = 1.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
};

template <typename Scalar>
Scalar norm(const SplitQuaternion<Scalar>& X) {
  return X.x[0] * X.x[0] + X.x[1] * X.x[1] - X.x[2] * X.x[2] - X.x[3] * X.x[3];
}

// [[x1 - i x2, x3 + i x4], [x3 - i x4, x1 + i x2]]; its determinant is N(X).
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 2, 2> matrix_realization(const SplitQuaternion<Scalar>& X) {
  using C = std::complex<Scalar>;
  Eigen::Matrix<C, 2, 2> m;
  m << C(X.x[0], -X.x[1]), C(X.x[2], X.x[3]), C(X.x[2], -X.x[3]), C(X.x[0], X.x[1]);
  return m;
}

template <typename Scalar>
Scalar pair(const DualVector<Scalar>& a, const DualVector<Scalar>& b) {
  return a.xi[0] * b.xi[0] + a.xi[1] * b.xi[1] - a.xi[2] * b.xi[2] - a.xi[3] * b.xi[3];
}

// Euclidean pairing xi . X.
template <typename Scalar>
Scalar dot(const DualVector<Scalar>& xi, const SplitQuaternion<Scalar>& X) {
  return xi.xi.dot(X.x);
}

template <typename Scalar>
Scalar euclidean_pair(const DualVector<Scalar>& a, const DualVector<Scalar>& b) {
  return a.xi.dot(b.xi);
}

inline void require_positive_radius(double r) {
  if (!(r > 0.0)) throw std::domain_error("cone point radius must be positive");
}

inline DualVector<double> cone_embed(const ConePoint& p) {
  require_positive_radius(p.r);
  return DualVector<double>(p.r * std::cos(p.theta1), p.r * std::sin(p.theta1), p.r * std::cos(p.theta2),
                            p.r * std::sin(p.theta2));
}

// Inverse chart for points of C*; the radius is taken from the (x1, x2) block.
inline ConePoint to_cone_point(const DualVector<double>& xi) {
  ConePoint p;
  p.r = std::hypot(xi.xi[0], xi.xi[1]);
  require_positive_radius(p.r);
  const double two_pi = 2.0 * std::numbers::pi;
  p.theta1 = std::atan2(xi.xi[1], xi.xi[0]);
  p.theta2 = std::atan2(xi.xi[3], xi.xi[2]);
  if (p.theta1 < 0) p.theta1 += two_pi;
  if (p.theta2 < 0) p.theta2 += two_pi;
  return p;
}

// <xi, xi'> for two cone points: r r' (cos(t1 - t1') - cos(t2 - t2')).
inline double cone_pair(const ConePoint& a, const ConePoint& b) {
  return a.r * b.r * (std::cos(a.theta1 - b.theta1) - std::cos(a.theta2 - b.theta2));
}

inline double cone_euclidean_pair(const ConePoint& a, const ConePoint& b) {
  return a.r * b.r * (std::cos(a.theta1 - b.theta1) + std::cos(a.theta2 - b.theta2));
}

// Density of dS/|xi| in (r, theta1, theta2).
inline double cone_measure_weight(const ConePoint& p) {
  require_positive_radius(p.r);
  return p.r;
}

// Density of the half-weighted measure of the delta(C) functional and of
// the Hilbert space L^2(R_+, r/2 dr) x L^2(S^1 x S^1).
inline double delta_cone_weight(const ConePoint& p) {
  require_positive_radius(p.r);
  return 0.5 * p.r;
}

// (4 / N(X)) phi(4 X / N(X)).
template <typename Fn, typename Scalar>
auto w0_act(Fn&& phi, const SplitQuaternion<Scalar>& X) {
  const Scalar n = norm(X);
  if (n == Scalar(0)) throw std::domain_error("w0_act: N(X) = 0 is singular");
  const Scalar c = Scalar(4) / n;
  return c * phi(SplitQuaternion<Scalar>(Vector4<Scalar>(c * X.x)));
}

// N(X)^l on N(X) > 0 through the principal branch.
inline std::complex<double> norm_power(const SplitQuaternion<double>& X, std::complex<double> l) {
  const double n = norm(X);
  if (!(n > 0.0)) throw std::domain_error("norm_power: requires N(X) > 0");
  return std::exp(l * std::log(n));
}

}  // namespace conekit
