// Bessel functions J0, Y0, K_n, the renormalized K~_n and the complex Gamma.
#pragma once

#include <complex>

#include "conekit/quadrature.hpp"

namespace conekit {

double bessel_j0(double u);
double bessel_y0(double u);
double bessel_k0(double u);
double bessel_k1(double u);
double bessel_kn(int n, double u);

// K~_n(r) = 2^n r^{-n} K_{|n|}(r).
double ktilde(int n, double r);

std::complex<double> gamma_complex(std::complex<double> z);
std::complex<double> log_gamma_complex(std::complex<double> z);

struct RenormalizedK {
  int n = 0;
  double r = 1.0;

  double value() const { return ktilde(n, r); }
};

enum class BesselMethod { series, asymptotic, integral_oracle };

// Branch-pinned evaluation. `series` and `asymptotic` use a single expansion
// regardless of argument; `integral_oracle` integrates the hyperbolic
// integral representations numerically.
struct BesselEvaluator {
  BesselMethod method = BesselMethod::series;
  double target_accuracy = 1e-12;

  double j0(double u) const;
  double y0(double u) const;
  double k0(double u) const;
  double k1(double u) const;

  // Magnitude of the first omitted Hankel term; bounds the asymptotic-branch
  // remainder for J0/Y0.
  static double hankel_remainder_bound(double u);
};

namespace bessel_detail {
double j0_series(double u);
double y0_series(double u);
void hankel_pq(double u, double& p, double& q, double* bound = nullptr);
double j0_asymptotic(double u);
double y0_asymptotic(double u);
double k0_series(double u);
double k1_series(double u);
void k01_continued_fraction(double u, double& k0, double& k1);
double k0_asymptotic(double u);
double k1_asymptotic(double u);
}  // namespace bessel_detail

// Integral representations: J0 = (2/pi) int_0^inf sin(u cosh t) dt,
// Y0 = -(2/pi) int_0^inf cos(u cosh t) dt, K0 = int_0^inf cos(u sinh t) dt
// = int_0^inf exp(-u cosh t) dt.
namespace oracle {
quad::Estimate<double> j0_integral(double u, const quad::Tolerance& tol = {});
quad::Estimate<double> y0_integral(double u, const quad::Tolerance& tol = {});
quad::Estimate<double> k0_cos_integral(double u, const quad::Tolerance& tol = {});
quad::Estimate<double> k0_exp_integral(double u, const quad::Tolerance& tol = {});
// K_n(u) = int_0^inf exp(-u cosh t) cosh(n t) dt.
quad::Estimate<double> kn_exp_integral(int n, double u, const quad::Tolerance& tol = {});
}  // namespace oracle

}  // namespace conekit
