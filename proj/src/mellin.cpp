#include "conekit/mellin.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "conekit/special_functions.hpp"

namespace conekit {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

void require_parity(int e) {
  if (e != 0 && e != 1) throw std::invalid_argument("parity must be 0 or 1");
}

double rel_err(cplx a, cplx b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

MellinResult mellin(const std::function<cplx(double)>& f, double rho, const MellinWindow& w,
                    const QuadratureSpec& spec) {
  if (!(w.alpha > -1.0) || !(w.beta > 1.0))
    throw std::domain_error("mellin: window needs alpha > -1 and beta > 1 for convergence");
  if (!(w.C0 > 0) || !(w.C1 > 0)) throw std::domain_error("mellin: envelope constants must be positive");
  const double target = spec.abs_tol / 10.0;
  const double left = std::log(w.C0 / ((w.alpha + 1.0) * target)) / (w.alpha + 1.0);
  const double right = std::log(w.C1 / ((w.beta - 1.0) * target)) / (w.beta - 1.0);
  const double L = std::max({left, right, 1.0});
  auto g = [&](double x) {
    const double s = std::exp(x);
    return f(s) * std::exp(cplx(x, -rho * x));
  };
  std::vector<double> breaks;
  for (double x = -L + 1.0; x < L; x += 1.0) breaks.push_back(x);
  auto e = quad::integrate(g, -L, L, spec.tolerance(), breaks);
  if (!e.converged) throw ConvergenceError("mellin: quadrature budget exhausted");
  return {rho, e.value, e.error + 2.0 * target};
}

double DampedTrigMoments::max_error() const {
  return std::max(std::abs(sin_quadrature - sin_closed), std::abs(cos_quadrature - cos_closed));
}

DampedTrigMoments damped_trig_moments(double a, double b) {
  if (!(a > 0)) throw std::domain_error("damped_trig_moments: a must be positive");
  DampedTrigMoments out;
  const double d = a * a + b * b;
  out.sin_closed = 2.0 * b * (3.0 * a * a - b * b) / (d * d * d);
  out.cos_closed = 2.0 * a * (a * a - 3.0 * b * b) / (d * d * d);
  // t^2 e^{-a t} < 1e-18 beyond T.
  double T = 1.0;
  while (T * T * std::exp(-a * T) > 1e-18 || T < 3.0 / a) T *= 1.5;
  std::vector<double> breaks;
  if (b != 0.0)
    for (double t = kPi / std::abs(b); t < T && breaks.size() < 2000; t += kPi / std::abs(b)) breaks.push_back(t);
  const quad::Tolerance tol{1e-15, 1e-13, 20000};
  out.sin_quadrature =
      quad::integrate([&](double t) { return t * t * std::exp(-a * t) * std::sin(b * t); }, 0.0, T, tol, breaks).value;
  out.cos_quadrature =
      quad::integrate([&](double t) { return t * t * std::exp(-a * t) * std::cos(b * t); }, 0.0, T, tol, breaks).value;
  return out;
}

PerThetaMellin per_theta_mellin_closed_forms(double rho, double R, double theta, int parity_eps) {
  if (rho == 0.0) throw std::domain_error("per_theta_mellin_closed_forms: rho = 0 is excluded");
  if (!(R > 0)) throw std::domain_error("per_theta_mellin_closed_forms: R must be positive");
  require_parity(parity_eps);
  const double c = std::cosh(theta);
  const cplx pow_exp(-2.0, 2.0 * rho);
  const cplx common = rho * cplx(1.0, -2.0 * rho) / std::cos(kPi * I * rho);
  const double sign = parity_eps ? 1.0 : -1.0;  // (-1)^{eps+1}
  PerThetaMellin out;
  out.plhat = sign * (2.0 / kPi) * common * std::pow(std::sqrt(2.0) * R * c, pow_exp);
  const cplx half = kPi * I * rho / 2.0;
  const cplx trig = parity_eps ? 1.0 / std::tan(half) : std::tan(half);
  out.fc = (8.0 * I / kPi) * common * std::pow(2.0 * std::sqrt(2.0) * c, pow_exp) * trig;
  return out;
}

PerThetaMellin per_theta_mellin_numeric(double rho, double R, double theta, int parity_eps,
                                        const QuadratureSpec& spec) {
  require_parity(parity_eps);
  const double c = std::cosh(theta);
  const double k = 2.0 * std::sqrt(2.0) / (kPi * kPi);
  MellinWindow wp;
  wp.alpha = 0.5;
  wp.C0 = k * (3.0 * R * c + 2.0 * R * R * R * c * c * c);
  wp.beta = 1.5;
  wp.C1 = k * (3.0 * R * c + 2.0 * R * R * R * c * c * c) / (8.0 * std::pow(R * c, 6));
  MellinWindow wf;
  wf.alpha = 0.0;
  wf.C0 = 16.0 / (kPi * kPi);
  wf.beta = 1.5;
  wf.C1 = 8.0 / (kPi * kPi) * (std::pow(2.0 * std::sqrt(2.0) * c, -3) + 3.0 / (64.0 * std::pow(c, 4)));
  PerThetaMellin out;
  out.plhat = mellin([&](double s) { return I * plhat_theta_integrand(R, s, theta, parity_eps); }, rho, wp, spec).value;
  out.fc = mellin([&](double s) { return cplx(fc_theta_integrand(s, theta, parity_eps)); }, rho, wf, spec).value;
  return out;
}

double GammaIdentity::rel_error() const { return rel_err(lhs, rhs); }

std::vector<GammaIdentity> gamma_chain_identities(double rho, int parity_eps) {
  if (rho == 0.0) throw std::domain_error("gamma_chain_identities: rho = 0 is excluded");
  require_parity(parity_eps);
  auto G = [](cplx z) { return gamma_complex(z); };
  const cplx ir = I * rho;
  const double sgn = parity_eps ? -1.0 : 1.0;
  std::vector<GammaIdentity> out;

  out.push_back({"plhat-gamma-collect", 3.0 * G(1.5 - ir) * G(1.5 + ir) - G(2.5 - ir) * G(0.5 + ir),
                 G(0.5 - ir) * G(0.5 + ir) * (0.5 - ir) * 4.0 * ir});
  out.push_back({"plhat-reflection", G(0.5 - ir) * G(0.5 + ir) * (0.5 - ir) * 4.0 * ir * I / (kPi * kPi),
                 -(2.0 / kPi) * rho * (1.0 - 2.0 * ir) / std::cos(kPi * ir)});

  const cplx fc0 = 2.0 * G(2.0 - 2.0 * ir) * G(1.0 + 2.0 * ir) +
                   sgn * (G(1.0 - ir) * G(2.0 + ir) - 3.0 * G(2.0 - ir) * G(1.0 + ir));
  const cplx fc1 = ir * (4.0 * (1.0 - 2.0 * ir) * G(1.0 - 2.0 * ir) * G(2.0 * ir) +
                         sgn * G(1.0 - ir) * G(ir) * ((1.0 + ir) - 3.0 * (1.0 - ir)));
  out.push_back({"fc-gamma-duplication", fc0, fc1});
  const cplx trig = 2.0 / std::sin(2.0 * kPi * ir) - sgn / std::sin(kPi * ir);
  out.push_back({"fc-reflection", 4.0 * fc1 / (kPi * kPi), 8.0 * ir * (1.0 - 2.0 * ir) / kPi * trig});
  const cplx half = kPi * ir / 2.0;
  out.push_back({"fc-trig-reduction", trig,
                 (parity_eps ? 1.0 / std::tan(half) : std::tan(half)) / std::cos(kPi * ir)});
  out.push_back({"ratio-hyperbolic",
                 parity_eps ? -I * std::tan(half) : I / std::tan(half),
                 parity_eps ? cplx(std::tanh(kPi * rho / 2.0)) : cplx(1.0 / std::tanh(kPi * rho / 2.0))});
  return out;
}

cplx reference_ratio(double rho, double R, int parity_eps) {
  if (rho == 0.0) throw std::domain_error("reference_ratio: rho = 0 is excluded");
  if (!(R > 0)) throw std::domain_error("reference_ratio: R must be positive");
  require_parity(parity_eps);
  const double t = std::tanh(kPi * rho / 2.0);
  return std::pow(R, cplx(-2.0, 2.0 * rho)) * std::pow(2.0, cplx(0.0, -2.0 * rho)) * (parity_eps ? t : 1.0 / t);
}

cplx ratio_exponent(double rho) { return 4.0 * cplx(-0.5, rho / 2.0); }

// ---------------------------------------------------------------------------
// Mellin transform of sampled ray data

namespace {

// int_0^a s^{beta - i rho} (log s)^m ds for m in {0, 1}.
cplx power_log_head(double a, double beta, int m, double rho) {
  const cplx mu(beta + 1.0, -rho);
  const cplx am = std::exp(mu * std::log(a));
  return m == 0 ? am / mu : am * (std::log(a) / mu - 1.0 / (mu * mu));
}

// Least-squares coefficients, real and imaginary parts separately.
Eigen::VectorXcd fit(const Eigen::MatrixXd& A, const std::vector<cplx>& y) {
  Eigen::VectorXd yr(y.size()), yi(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    yr[i] = y[i].real();
    yi[i] = y[i].imag();
  }
  auto qr = A.colPivHouseholderQr();
  Eigen::VectorXd cr = qr.solve(yr), ci = qr.solve(yi);
  Eigen::VectorXcd c(cr.size());
  for (int i = 0; i < cr.size(); ++i) c[i] = cplx(cr[i], ci[i]);
  return c;
}

cplx interior(const RaySamples& S, double rho, int degree) {
  const int n = static_cast<int>(S.s.size());
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = std::log(S.s[i]);
  const auto& gl = quad::gauss_legendre(12);
  quad::CompensatedSum<cplx> acc;
  for (int i = 0; i + 1 < n; ++i) {
    int lo = i - degree / 2;
    lo = std::clamp(lo, 0, n - degree - 1);
    const double a = x[i], b = x[i + 1];
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      const double t = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[q];
      cplx p = 0.0;
      for (int j = lo; j <= lo + degree; ++j) {
        double l = 1.0;
        for (int m = lo; m <= lo + degree; ++m)
          if (m != j) l *= (t - x[m]) / (x[j] - x[m]);
        p += l * S.values[j];
      }
      acc.add(0.5 * (b - a) * gl.weights[q] * p * std::exp(cplx(t, -rho * t)));
    }
  }
  return acc.value();
}

struct Tails {
  cplx head, tail;
};

Tails tails(const RaySamples& S, double rho, int head_points, int tail_points) {
  const int n = static_cast<int>(S.s.size());
  // Small-s expansion in {log s, 1, s^{1/2}, s^{1/2} log s, s, s log s}.
  const double powers[] = {0.0, 0.0, 0.5, 0.5, 1.0, 1.0};
  const int logs[] = {1, 0, 0, 1, 0, 1};
  Eigen::MatrixXd A(head_points, 6);
  std::vector<cplx> y;
  for (int i = 0; i < head_points; ++i) {
    const double s = S.s[i];
    for (int j = 0; j < 6; ++j) A(i, j) = std::pow(s, powers[j]) * (logs[j] ? std::log(s) : 1.0);
    y.push_back(S.values[i]);
  }
  const Eigen::VectorXcd ch = fit(A, y);
  Tails out{0.0, 0.0};
  for (int j = 0; j < 6; ++j) out.head += ch[j] * power_log_head(S.s.front(), powers[j], logs[j], rho);
  // Large-s expansion sum_{j >= 3} b_j s^{-j/2}.
  const int terms = 4;
  Eigen::MatrixXd B(tail_points, terms);
  y.clear();
  for (int i = 0; i < tail_points; ++i) {
    const double s = S.s[n - tail_points + i];
    for (int j = 0; j < terms; ++j) B(i, j) = std::pow(s, -0.5 * (j + 3));
    y.push_back(S.values[n - tail_points + i]);
  }
  const Eigen::VectorXcd ct = fit(B, y);
  const double smax = S.s.back();
  for (int j = 0; j < terms; ++j) {
    const cplx mu(1.0 - 0.5 * (j + 3), -rho);
    out.tail += -ct[j] * std::exp(mu * std::log(smax)) / mu;
  }
  return out;
}

}  // namespace

MellinResult mellin_from_samples(const RaySamples& S, double rho) {
  const int n = static_cast<int>(S.s.size());
  if (n < 16 || S.values.size() != S.s.size()) throw std::invalid_argument("mellin_from_samples: need >= 16 samples");
  const int tail_points = std::count_if(S.s.begin(), S.s.end(), [](double s) { return s >= 10.0; });
  if (tail_points < 5) throw std::invalid_argument("mellin_from_samples: need >= 5 samples with s >= 10");
  const cplx mid = interior(S, rho, 7);
  const Tails t = tails(S, rho, 10, tail_points);
  const cplx mid_low = interior(S, rho, 5);
  const Tails t_alt = tails(S, rho, 8, tail_points - 1);
  MellinResult out;
  out.rho = rho;
  out.value = t.head + mid + t.tail;
  out.error_estimate = std::abs(mid - mid_low) + std::abs(t.head - t_alt.head) + std::abs(t.tail - t_alt.tail);
  return out;
}

MellinRatioEngine::MellinRatioEngine(EndToEndOptions opts) : opts_(std::move(opts)) {
  if (opts_.grid_points < 16 || !(opts_.s_min > 0) || !(opts_.s_max > opts_.s_min))
    throw std::invalid_argument("MellinRatioEngine: bad grid");
  const double a = std::log(opts_.s_min), b = std::log(opts_.s_max);
  for (int i = 0; i < opts_.grid_points; ++i) grid_.push_back(std::exp(a + (b - a) * i / (opts_.grid_points - 1)));
}

const RaySamples& MellinRatioEngine::fc_samples(int parity_eps) {
  require_parity(parity_eps);
  for (auto& [e, s] : fc_)
    if (e == parity_eps) return s;
  const auto f = make_f_xi_eps(opts_.base_xi, parity_eps, opts_.profile).as_cone_function();
  RaySamples S;
  S.s = grid_;
  S.values = quad::parallel_map(
      grid_.size(),
      [&](std::size_t i) {
        const ConePoint p{grid_[i] * opts_.base_xi.r, opts_.base_xi.theta1, opts_.base_xi.theta2};
        return op_FC(f, p, opts_.operator_spec).value;
      },
      opts_.workers);
  fc_.emplace_back(parity_eps, std::move(S));
  return fc_.back().second;
}

const RaySamples& MellinRatioEngine::plhat_samples(double R, int parity_eps) {
  require_parity(parity_eps);
  for (auto& [key, s] : plhat_)
    if (key.first == R && key.second == parity_eps) return s;
  const auto f = make_f_xi_eps(opts_.base_xi, parity_eps, opts_.profile).as_cone_function();
  RaySamples S;
  S.s = grid_;
  S.values = quad::parallel_map(
      grid_.size(),
      [&](std::size_t i) {
        const ConePoint p{grid_[i] * opts_.base_xi.r, opts_.base_xi.theta1, opts_.base_xi.theta2};
        return op_PlHatPrime(f, R, p, opts_.operator_spec).value;
      },
      opts_.workers);
  plhat_.emplace_back(std::make_pair(R, parity_eps), std::move(S));
  return plhat_.back().second;
}

cplx MellinRatioEngine::raw_ratio(double rho, double R, int parity_eps) {
  const auto num = mellin_from_samples(plhat_samples(R, parity_eps), rho);
  const auto den = mellin_from_samples(fc_samples(parity_eps), rho);
  return num.value / den.value;
}

cplx MellinRatioEngine::calibration() {
  if (!calibrated_) {
    const double r0 = opts_.calibration_rho, R0 = opts_.calibration_R;
    calibration_ = raw_ratio(r0, R0, 0) / reference_ratio(r0, R0, 0);
    calibrated_ = true;
  }
  return calibration_;
}

RatioVerdict MellinRatioEngine::verify(double rho, double R, int parity_eps, RatioMode mode) {
  if (rho == 0.0) throw std::domain_error("verify_ratio: rho = 0 is excluded");
  RatioVerdict v;
  v.rho = rho;
  v.R = R;
  v.parity_eps = parity_eps;
  v.mode = mode;
  v.reference_ratio = reference_ratio(rho, R, parity_eps);
  if (mode == RatioMode::closed_form) {
    const auto pt = per_theta_mellin_closed_forms(rho, R, 0.0, parity_eps);
    v.computed_ratio = pt.plhat / pt.fc;
    v.rel_error = rel_err(v.computed_ratio, v.reference_ratio);
    v.uncalibrated_rel_error = v.rel_error;
    return v;
  }
  const cplx raw = raw_ratio(rho, R, parity_eps);
  v.calibration = calibration();
  v.computed_ratio = raw / v.calibration;
  v.rel_error = rel_err(v.computed_ratio, v.reference_ratio);
  v.uncalibrated_rel_error = rel_err(raw, v.reference_ratio);
  return v;
}

RatioVerdict verify_ratio(double rho, double R, int parity_eps, RatioMode mode, const EndToEndOptions& opts) {
  MellinRatioEngine engine(opts);
  return engine.verify(rho, R, parity_eps, mode);
}

}  // namespace conekit
