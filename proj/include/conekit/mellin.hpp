// Mellin transforms, the Gamma-function chains and the coth/tanh ratio.
#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "conekit/cone_operators.hpp"
#include "conekit/kernels.hpp"

namespace conekit {

// |f(s)| <= C0 s^alpha for s <= 1 and |f(s)| <= C1 s^{-beta} for s >= 1.
struct MellinWindow {
  double alpha = 0.0;
  double C0 = 1.0;
  double beta = 2.0;
  double C1 = 1.0;
};

struct MellinResult {
  double rho = 0.0;
  cplx value;
  double error_estimate = 0.0;
};

// int_0^inf f(s) s^{1 - i rho} ds / s, integrated in log s on [-L, L].
MellinResult mellin(const std::function<cplx(double)>& f, double rho, const MellinWindow& window,
                    const QuadratureSpec& spec = {});

struct DampedTrigMoments {
  double sin_quadrature = 0.0, cos_quadrature = 0.0;
  double sin_closed = 0.0, cos_closed = 0.0;
  double max_error() const;
};

// int_0^inf t^2 e^{-a t} sin(b t) dt and the cos analogue.
DampedTrigMoments damped_trig_moments(double a, double b);

struct PerThetaMellin {
  cplx plhat;
  cplx fc;
};

PerThetaMellin per_theta_mellin_closed_forms(double rho, double R, double theta, int parity_eps);
// The same two transforms computed numerically from the per-theta s-integrands.
PerThetaMellin per_theta_mellin_numeric(double rho, double R, double theta, int parity_eps,
                                        const QuadratureSpec& spec = {});

struct GammaIdentity {
  std::string name;
  cplx lhs;
  cplx rhs;
  double rel_error() const;
};

// Every intermediate Gamma/trig step of the two Mellin chains.
std::vector<GammaIdentity> gamma_chain_identities(double rho, int parity_eps);

cplx reference_ratio(double rho, double R, int parity_eps);

// 4l for the ratio parameter l = -1/2 + i rho/2, so that R^{4l} is the
// R-dependence of the reference ratio.
cplx ratio_exponent(double rho);

enum class RatioMode { closed_form, end_to_end };

struct RatioVerdict {
  double rho = 0.0;
  double R = 0.0;
  int parity_eps = 0;
  RatioMode mode = RatioMode::closed_form;
  cplx computed_ratio;
  cplx reference_ratio;
  double rel_error = 0.0;
  cplx calibration{1.0, 0.0};
  double uncalibrated_rel_error = 0.0;
};

struct RaySamples {
  std::vector<double> s;
  std::vector<cplx> values;
};

struct EndToEndOptions {
  int grid_points = 48;
  double s_min = 1e-3;
  double s_max = 50.0;
  ConePoint base_xi{1.0, 0.3, 1.1};
  RadialProfile profile = RadialProfile::exp_sqrt;
  double calibration_rho = 1.0;
  double calibration_R = 1.0;
  QuadratureSpec operator_spec = [] {
    auto s = conekit::operator_spec();
    s.rel_tol = 1e-5;
    s.abs_tol = 1e-9;
    return s;
  }();
  unsigned workers = 1;
};

// Mellin transform of samples on a log-uniform grid: degree-7 local
// interpolation inside the grid, fitted asymptotic tails outside.
MellinResult mellin_from_samples(const RaySamples& samples, double rho);

// Holds the ray samples of both operators so that a grid of verdicts reuses
// them.
class MellinRatioEngine {
 public:
  explicit MellinRatioEngine(EndToEndOptions opts = {});

  RatioVerdict verify(double rho, double R, int parity_eps, RatioMode mode);
  const RaySamples& fc_samples(int parity_eps);
  const RaySamples& plhat_samples(double R, int parity_eps);
  // M(PlHat)/M(FC) before calibration.
  cplx raw_ratio(double rho, double R, int parity_eps);
  cplx calibration();

 private:
  EndToEndOptions opts_;
  std::vector<double> grid_;
  std::vector<std::pair<std::pair<double, int>, RaySamples>> plhat_;
  std::vector<std::pair<int, RaySamples>> fc_;
  bool calibrated_ = false;
  cplx calibration_{1.0, 0.0};
};

RatioVerdict verify_ratio(double rho, double R, int parity_eps, RatioMode mode, const EndToEndOptions& opts = {});

}  // namespace conekit
