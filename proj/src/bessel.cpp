#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "conekit/special_functions.hpp"

namespace conekit {

namespace {

constexpr long double kEulerGamma = 0.57721566490153286060651209008240243L;
constexpr long double kPiL = 3.14159265358979323846264338327950288L;
constexpr double kSeriesLimitJY = 17.0;
constexpr double kSeriesLimitK = 2.0;
constexpr double kAsymptoticLimitK = 25.0;

// sum_k (-1)^k (x^2/4)^k / (k!)^2 and sum_k (-1)^{k+1} H_k (x^2/4)^k / (k!)^2
void jy_sums(long double x, long double& j, long double& y) {
  const long double q = x * x / 4.0L;
  long double term = 1.0L, harmonic = 0.0L;
  j = 1.0L;
  y = 0.0L;
  for (int k = 1; k < 400; ++k) {
    term *= -q / (static_cast<long double>(k) * k);
    harmonic += 1.0L / k;
    j += term;
    y -= harmonic * term;
    if (k > x && std::fabs(term * harmonic) < 1e-22L * (std::fabs(j) + std::fabs(y) + 1e-30L)) break;
  }
}

// I0, I1 and the K0/K1 logarithm-free sums.
void k_sums(long double x, long double& i0, long double& i1, long double& s0, long double& s1) {
  const long double q = x * x / 4.0L;
  long double t0 = 1.0L;       // q^k / (k!)^2
  long double t1 = 1.0L;       // q^k / (k! (k+1)!)
  long double hk = 0.0L;       // H_k
  i0 = 1.0L;
  i1 = 1.0L;
  s0 = 0.0L;
  s1 = (-kEulerGamma) + (1.0L - kEulerGamma);  // psi(1) + psi(2)
  for (int k = 1; k < 400; ++k) {
    t0 *= q / (static_cast<long double>(k) * k);
    t1 *= q / (static_cast<long double>(k) * (k + 1));
    hk += 1.0L / k;
    i0 += t0;
    i1 += t1;
    s0 += hk * t0;
    s1 += ((-kEulerGamma + hk) + (-kEulerGamma + hk + 1.0L / (k + 1))) * t1;
    if (t0 < 1e-22L * i0 && t1 < 1e-22L * i1) break;
  }
  i1 *= x / 2.0L;
}

void require_positive(double u, const char* what) {
  if (!(u > 0.0)) throw std::domain_error(std::string(what) + ": argument must be positive");
}

}  // namespace

namespace bessel_detail {

double j0_series(double u) {
  long double j, y;
  jy_sums(u, j, y);
  return static_cast<double>(j);
}

double y0_series(double u) {
  require_positive(u, "y0_series");
  long double j, y;
  jy_sums(u, j, y);
  const long double lx = std::log(static_cast<long double>(u) / 2.0L) + kEulerGamma;
  return static_cast<double>(2.0L / kPiL * (lx * j + y));
}

void hankel_pq(double u, double& p, double& q, double* bound) {
  // a_k = prod_{j<=k} (-(2j-1)^2) / (k! 8^k); terms a_k / u^k.
  double term = 1.0;
  double ps = 1.0, qs = 0.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * (-(2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * u);
    if (std::abs(next) >= std::abs(last) && k > 2) {
      if (bound) *bound = std::abs(next);
      break;
    }
    term = next;
    last = term;
    // P takes even k with sign (-1)^{k/2}; Q odd k with sign (-1)^{(k-1)/2}.
    if (k % 2 == 0)
      ps += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    else
      qs += (((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    if (std::abs(term) < 1e-18) {
      if (bound) *bound = std::abs(term);
      break;
    }
  }
  p = ps;
  q = qs;
}

double j0_asymptotic(double u) {
  require_positive(u, "j0_asymptotic");
  double p, q;
  hankel_pq(u, p, q);
  const double s = std::sin(u), c = std::cos(u);
  const double cchi = (c + s) / std::numbers::sqrt2, schi = (s - c) / std::numbers::sqrt2;
  return std::sqrt(2.0 / (std::numbers::pi * u)) * (p * cchi - q * schi);
}

double y0_asymptotic(double u) {
  require_positive(u, "y0_asymptotic");
  double p, q;
  hankel_pq(u, p, q);
  const double s = std::sin(u), c = std::cos(u);
  const double cchi = (c + s) / std::numbers::sqrt2, schi = (s - c) / std::numbers::sqrt2;
  return std::sqrt(2.0 / (std::numbers::pi * u)) * (p * schi + q * cchi);
}

double k0_series(double u) {
  require_positive(u, "k0_series");
  long double i0, i1, s0, s1;
  k_sums(u, i0, i1, s0, s1);
  const long double lx = std::log(static_cast<long double>(u) / 2.0L);
  return static_cast<double>(-(lx + kEulerGamma) * i0 + s0);
}

double k1_series(double u) {
  require_positive(u, "k1_series");
  long double i0, i1, s0, s1;
  k_sums(u, i0, i1, s0, s1);
  const long double x = u;
  const long double lx = std::log(x / 2.0L);
  return static_cast<double>(1.0L / x + lx * i1 - 0.5L * (x / 2.0L) * s1);
}

void k01_continued_fraction(double u, double& k0, double& k1) {
  require_positive(u, "k01_continued_fraction");
  const double eps = 1e-17;
  double b = 2.0 * (1.0 + u);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25;
  double q = a1, c = a1, a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i < 100000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < eps) break;
  }
  h = a1 * h;
  k0 = std::sqrt(std::numbers::pi / (2.0 * u)) * std::exp(-u) / s;
  k1 = k0 * (u + 0.5 - h) / u;
}

namespace {
double k_asymptotic(double nu, double u) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * u);
    if (std::abs(next) >= std::abs(term) && k > 2) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return std::sqrt(std::numbers::pi / (2.0 * u)) * std::exp(-u) * sum;
}
}  // namespace

double k0_asymptotic(double u) {
  require_positive(u, "k0_asymptotic");
  return k_asymptotic(0.0, u);
}

double k1_asymptotic(double u) {
  require_positive(u, "k1_asymptotic");
  return k_asymptotic(1.0, u);
}

}  // namespace bessel_detail

double bessel_j0(double u) {
  if (u < 0.0 || std::isnan(u)) throw std::domain_error("bessel_j0: argument must be nonnegative");
  return u <= kSeriesLimitJY ? bessel_detail::j0_series(u) : bessel_detail::j0_asymptotic(u);
}

double bessel_y0(double u) {
  require_positive(u, "bessel_y0");
  return u <= kSeriesLimitJY ? bessel_detail::y0_series(u) : bessel_detail::y0_asymptotic(u);
}

double bessel_k0(double u) {
  require_positive(u, "bessel_k0");
  if (u <= kSeriesLimitK) return bessel_detail::k0_series(u);
  if (u >= kAsymptoticLimitK) return bessel_detail::k0_asymptotic(u);
  double k0, k1;
  bessel_detail::k01_continued_fraction(u, k0, k1);
  return k0;
}

double bessel_k1(double u) {
  require_positive(u, "bessel_k1");
  if (u <= kSeriesLimitK) return bessel_detail::k1_series(u);
  if (u >= kAsymptoticLimitK) return bessel_detail::k1_asymptotic(u);
  double k0, k1;
  bessel_detail::k01_continued_fraction(u, k0, k1);
  return k1;
}

double bessel_kn(int n, double u) {
  require_positive(u, "bessel_kn");
  n = std::abs(n);
  double km = bessel_k0(u);
  if (n == 0) return km;
  double k = bessel_k1(u);
  for (int j = 1; j < n; ++j) {
    const double kp = km + (2.0 * j / u) * k;
    km = k;
    k = kp;
  }
  return k;
}

double ktilde(int n, double r) {
  require_positive(r, "ktilde");
  return std::pow(2.0 / r, n) * bessel_kn(n, r);
}

double BesselEvaluator::hankel_remainder_bound(double u) {
  double p, q, bound = 0.0;
  bessel_detail::hankel_pq(u, p, q, &bound);
  return std::sqrt(2.0 / (std::numbers::pi * u)) * bound;
}

double BesselEvaluator::j0(double u) const {
  switch (method) {
    case BesselMethod::series: return bessel_detail::j0_series(u);
    case BesselMethod::asymptotic: return bessel_detail::j0_asymptotic(u);
    case BesselMethod::integral_oracle: return oracle::j0_integral(u, {target_accuracy * 1e-2, target_accuracy}).value;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double BesselEvaluator::y0(double u) const {
  switch (method) {
    case BesselMethod::series: return bessel_detail::y0_series(u);
    case BesselMethod::asymptotic: return bessel_detail::y0_asymptotic(u);
    case BesselMethod::integral_oracle: return oracle::y0_integral(u, {target_accuracy * 1e-2, target_accuracy}).value;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double BesselEvaluator::k0(double u) const {
  switch (method) {
    case BesselMethod::series: return bessel_detail::k0_series(u);
    case BesselMethod::asymptotic: return bessel_detail::k0_asymptotic(u);
    case BesselMethod::integral_oracle: return oracle::k0_exp_integral(u, {target_accuracy * 1e-2, target_accuracy}).value;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double BesselEvaluator::k1(double u) const {
  switch (method) {
    case BesselMethod::series: return bessel_detail::k1_series(u);
    case BesselMethod::asymptotic: return bessel_detail::k1_asymptotic(u);
    case BesselMethod::integral_oracle:
      return oracle::kn_exp_integral(1, u, {target_accuracy * 1e-2, target_accuracy}).value;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace conekit
