// Integral operators F_{C*}, F_C and PlHat'_R on L^2(C*) and the test
// functions f_{xi,eps}.
#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "conekit/geometry.hpp"
#include "conekit/kernels.hpp"

namespace conekit {

enum class DecayKind { exponential, power_law, compact_support };

// |f(r, .)| <= C r^q exp(-a r^p)       (exponential)
// |f(r, .)| <= C r^q for r >= 1, q < -2 (power_law)
// f(r, .) = 0 for r > r_max            (compact_support)
struct DecayCertificate {
  DecayKind kind = DecayKind::exponential;
  double C = 1.0;
  double q = 0.0;
  double a = 1.0;
  double p = 1.0;
  double r_max = 0.0;

  double bound(double r) const;
  // Radius beyond which int_V^inf B(kappa r) |f| r dr < target, with the
  // kernel envelope B(x) = 1 + |log|x||/2.
  double truncation_radius(double target, double log_kappa) const;
};

// Angular piece of the support: the box [c1 - w1, c1 + w1] x [c2 - w2, c2 + w2]
// or the disc of radius w1 around (c1, c2), both measured on the torus.
struct AngularPatch {
  enum Kind { box, disc } kind = box;
  double c1 = std::numbers::pi, c2 = std::numbers::pi;
  double w1 = std::numbers::pi, w2 = std::numbers::pi;

  static AngularPatch torus() { return {}; }
};

struct ConeFunction {
  std::function<cplx(double r, double theta1, double theta2)> eval;
  DecayCertificate decay;
  std::vector<AngularPatch> support = {AngularPatch::torus()};

  cplx operator()(const ConePoint& p) const { return eval(p.r, p.theta1, p.theta2); }
};

// Looser defaults than the kernel engine: every operator value is a
// three-fold nested integral.
QuadratureSpec operator_spec();

// -(1/pi) int Psi_0(xi . xi') f(xi') dS/|xi'|
quad::Estimate<cplx> op_FCstar(const ConeFunction& f, const ConePoint& xi, const QuadratureSpec& spec = operator_spec());
// -(1/pi) int Psi_0(-<xi, xi'>) f(xi') dS/|xi'|
quad::Estimate<cplx> op_FC(const ConeFunction& f, const ConePoint& xi, const QuadratureSpec& spec = operator_spec());
// (i/4pi) int Phi_0^+(-(R^2/4) <xi, xi'>) f(xi') dS/|xi'|
quad::Estimate<cplx> op_PlHatPrime(const ConeFunction& f, double R, const ConePoint& xi,
                                   const QuadratureSpec& spec = operator_spec());

// ||f||^2 against (r/2) dr dtheta1 dtheta2.
quad::Estimate<double> l2_norm_squared(const ConeFunction& f, const QuadratureSpec& spec = operator_spec());

enum class RadialProfile {
  exp_linear,  // exp(-|<xi, xi'>|)
  exp_sqrt,    // exp(-|<xi, xi'>|^{1/2}), the profile behind the theta-chains
};

// psi * |<xi, xi'>|^{-1/2} * profile, with psi a bump of radius `width`
// centred at relative angles (0, pi) plus (-1)^eps times its antipodal copy.
struct TestFunctionFxiEps {
  ConePoint base_xi;
  int parity_eps = 0;
  RadialProfile profile = RadialProfile::exp_linear;
  double width = 0.8;

  double psi(double theta1, double theta2) const;
  cplx operator()(const ConePoint& p) const;
  ConeFunction as_cone_function() const;

  // int psi_+ / (r0 c)^2 over the positive bump, c = cos d1 - cos d2.
  double angular_weight() const;
  // A times the theta-integrated closed chains; they equal the operators on
  // the ray s xi exactly for the exp_sqrt profile.
  double fc_ray_chain(double s) const;
  cplx plhat_ray_chain(double R, double s) const;
};

TestFunctionFxiEps make_f_xi_eps(const ConePoint& base_xi, int parity_eps,
                                 RadialProfile profile = RadialProfile::exp_linear);

// Per-theta integrands of the two closed chains (without the angular weight).
double fc_theta_integrand(double s, double theta, int parity_eps);
double plhat_theta_integrand(double R, double s, double theta, int parity_eps);
// int_0^inf of the above in theta.
double fc_theta_chain(double s, int parity_eps);
double plhat_theta_chain(double R, double s, int parity_eps);

}  // namespace conekit
