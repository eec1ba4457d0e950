// Kernels Psi_0 and Phi_0^+, +-i0 regularized Fourier transforms and the
// delta(C) functional.
#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "conekit/geometry.hpp"
#include "conekit/quadrature.hpp"

namespace conekit {

using cplx = std::complex<double>;

double psi0(double t);
double phi0_plus(double t);

struct QuadratureSpec {
  double abs_tol = 1e-11;
  double rel_tol = 1e-10;
  // Largest hyperbolic variable any oscillatory half-line may reach.
  double truncation_T = 40.0;
  // In units of min(1, R^2).
  std::vector<double> epsilon_ladder = {0.2, 0.1, 0.05, 0.025, 0.0125};
  int extrapolation_order = 4;
  unsigned workers = 1;

  void validate() const;
  quad::Tolerance tolerance() const { return {abs_tol, rel_tol, 4000}; }
};

struct FtClosedForm {
  double R = 1.0;
  double q = 1.0;
  int sign_R2 = -1;
  int sign_eps = 1;

  cplx value() const;
};

cplx ft_closed_form(double R, double q, int sign_R2, int sign_eps);

struct FtResult {
  cplx value;
  double error = 0.0;
  std::vector<cplx> ladder;  // regularized values, one per epsilon
  bool converged = true;
};

// lim (1/4 pi^2) int exp(i xi.X) (N(X) + sign_R2 R^2 + sign_eps i eps)^{-2} dV
// from the two-dimensional hyperbolic reduction.
FtResult ft_regularized(double R, const DualVector<double>& xi, int sign_R2, int sign_eps,
                        const QuadratureSpec& spec = {});

// Value of the reduced double integral at one fixed eps (no limit taken),
// already divided by 4 pi^2.
FtResult ft_at_epsilon(double R, const DualVector<double>& xi, int sign_R2, int sign_eps, double eps,
                       const QuadratureSpec& spec = {});

// Cartesian evaluation of the same fixed-eps double integral with a Gaussian
// damping exp(-delta (x1^2 + x3^2)) extrapolated to delta -> 0. Low accuracy,
// independent of the hyperbolic coordinates.
FtResult ft_damped_oracle(double R, const DualVector<double>& xi, int sign_R2, int sign_eps, double eps,
                          std::vector<double> deltas = {0.04, 0.02, 0.01});

struct CorollaryValues {
  cplx symmetric;      // at R = 2
  cplx antisymmetric;  // at R
  double error = 0.0;
};

CorollaryValues corollary_kernels(double R, const ConePoint& xi, const ConePoint& xi2,
                                  const QuadratureSpec& spec = {});

struct LemmaValues {
  std::array<double, 4> integral{};   // the four t-integrals with their prefactors
  std::array<double, 4> closed{};     // Psi_0 / Phi_0^+ values
  std::array<double, 4> error{};
  double r1 = 0.0, r2 = 0.0;
  bool slow = false;  // r1 close to r2
};

LemmaValues lemma_kernel_integrals(double R, const ConePoint& xi, const ConePoint& xi2,
                                   const QuadratureSpec& spec = {});

struct DeltaConeResult {
  cplx surface;
  cplx volume;
  double volume_error = 0.0;
  std::vector<cplx> ladder;
  double rel_difference() const;
};

using AmbientFunction = std::function<cplx(const SplitQuaternion<double>&)>;

struct DeltaConeOptions {
  std::vector<double> epsilon_ladder = {0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125};
  int angular_points = 32;
  double tolerance = 1e-5;
};

// Surface route 1/2 int_C psi dS/|X| against the regularized volume route
// (1/2 pi i) int (1/(N - i eps) - 1/(N + i eps)) psi dV, eps -> 0.
DeltaConeResult delta_cone_apply(const AmbientFunction& psi, const QuadratureSpec& spec = {},
                                 const DeltaConeOptions& opts = {});

// Least-squares fit of y(h) by the given basis and evaluation at h = 0,
// with the error taken from dropping the last basis function.
quad::Estimate<cplx> extrapolate_basis(std::span<const double> h, std::span<const cplx> y,
                                       const std::vector<std::function<double(double)>>& basis);

}  // namespace conekit
