#include "conekit/cone_operators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace conekit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double a) { return std::remainder(a, kTwoPi); }

double envelope_tail(const DecayCertificate& d, double V, double log_kappa) {
  auto g = [&](double r) {
    return (1.0 + 0.5 * (std::abs(log_kappa) + std::abs(std::log(r)))) * d.bound(r) * r;
  };
  return quad::integrate_half_line(g, V, {1e-30, 1e-6, 400}).value;
}

}  // namespace

double DecayCertificate::bound(double r) const {
  switch (kind) {
    case DecayKind::exponential:
      return C * std::pow(r, q) * std::exp(-a * std::pow(r, p));
    case DecayKind::power_law:
      return C * std::pow(std::max(r, 1.0), q);
    case DecayKind::compact_support:
      return r > r_max ? 0.0 : C;
  }
  return 0.0;
}

double DecayCertificate::truncation_radius(double target, double log_kappa) const {
  switch (kind) {
    case DecayKind::compact_support:
      if (!(r_max > 0)) throw std::invalid_argument("DecayCertificate: compact support needs r_max > 0");
      return r_max;
    case DecayKind::power_law:
      if (!(q < -2)) throw std::invalid_argument("DecayCertificate: power law needs q < -2");
      break;
    case DecayKind::exponential:
      if (!(a > 0) || !(p > 0)) throw std::invalid_argument("DecayCertificate: exponential needs a, p > 0");
      break;
  }
  double V = 1.0;
  while (envelope_tail(*this, V, log_kappa) > target) {
    V *= 2.0;
    if (V > 1e12) throw ConvergenceError("DecayCertificate: truncation radius exceeds 1e12");
  }
  return V;
}

QuadratureSpec operator_spec() {
  QuadratureSpec s;
  s.abs_tol = 1e-10;
  s.rel_tol = 1e-8;
  return s;
}

namespace {

enum class Pairing { minus, plus };  // c = cos d1 -+ cos d2

struct KernelPlan {
  double (*kernel)(double);
  Pairing pairing;
  double scale;           // kappa = scale * c
  bool positive_only;     // kernel vanishes for kappa <= 0
  cplx prefactor;
  ConePoint at;
  bool unit_kernel = false;  // plain integral of f, no pairing
};

double pairing_c(const KernelPlan& k, double t1, double t2) {
  const double a = std::cos(t1 - k.at.theta1), b = std::cos(t2 - k.at.theta2);
  return k.pairing == Pairing::minus ? a - b : a + b;
}

// Theta2 values in [lo, hi] where c vanishes for the given theta1.
std::vector<double> zero_breaks(const KernelPlan& k, double t1, double lo, double hi) {
  if (k.unit_kernel) return {};
  const double d1 = t1 - k.at.theta1;
  const double base = k.at.theta2 + (k.pairing == Pairing::minus ? 0.0 : kPi);
  std::vector<double> out;
  for (double z : {base + d1, base - d1}) {
    double first = z + kTwoPi * std::ceil((lo - z) / kTwoPi);
    for (double t = first; t < hi; t += kTwoPi)
      if (t > lo) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double x, double y) { return std::abs(x - y) < 1e-14; }),
            out.end());
  return out;
}

class OperatorEngine {
 public:
  OperatorEngine(const ConeFunction& f, const KernelPlan& plan, const QuadratureSpec& spec)
      : f_(f), plan_(plan), spec_(spec) {
    if (!f.eval) throw std::invalid_argument("cone operator: empty function");
    if (!(plan.at.r > 0)) throw std::domain_error("cone operator: evaluation point must have r > 0");
  }

  quad::Estimate<cplx> run() {
    quad::Estimate<cplx> total;
    for (const auto& patch : f_.support) {
      auto e = patch.kind == AngularPatch::disc ? disc(patch) : box(patch.c1 - patch.w1, patch.c1 + patch.w1,
                                                                   patch.c2 - patch.w2, patch.c2 + patch.w2);
      total.value += e.value;
      total.error += e.error;
      total.evaluations += e.evaluations;
      total.converged = total.converged && e.converged;
    }
    total.value *= plan_.prefactor;
    total.error *= std::abs(plan_.prefactor);
    if (!total.converged) throw ConvergenceError("cone operator: quadrature budget exhausted");
    return total;
  }

 private:
  double truncation(double kappa) {
    const int band = static_cast<int>(std::ceil(std::abs(std::log(std::abs(kappa)))));
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = radius_.find(band);
    if (it != radius_.end()) return it->second;
    const double target = spec_.abs_tol / (10.0 * 4.0 * kPi * kPi);
    const double V = f_.decay.truncation_radius(target, band);
    radius_.emplace(band, V);
    return V;
  }

  // int_0^inf k(kappa r) f(r, t1, t2) r dr with r = v^2.
  cplx radial(double t1, double t2) {
    const double kappa = plan_.unit_kernel ? 1.0 : plan_.scale * pairing_c(plan_, t1, t2);
    if (kappa == 0.0 || (plan_.positive_only && kappa <= 0.0)) return 0.0;
    const double V = truncation(kappa);
    auto g = [&](double v) -> cplx {
      if (v == 0.0) return 0.0;
      const double r = v * v;
      const cplx fv = f_.eval(r, t1, t2);
      if (fv == 0.0) return 0.0;
      return 2.0 * v * r * plan_.kernel(kappa * r) * fv;
    };
    const quad::Tolerance tol{spec_.abs_tol * 0.01, spec_.rel_tol * 0.01, 2000};
    auto e = quad::integrate(g, 0.0, std::sqrt(V), tol);
    if (!e.converged) converged_ = false;
    return e.value;
  }

  bool log_kernel() const { return !plan_.unit_kernel && !plan_.positive_only; }

  // x = lo + (hi - lo) u(t), u = t^3 (10 - 15 t + 6 t^2): flattens the log
  // singularities of Psi_0 at the zero lines of the pairing in theta2.
  template <typename G>
  static auto smoothed(G& g, double lo, double hi) {
    return [&g, lo, hi](double t) -> cplx {
      const double u = t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
      const double du = 30.0 * t * t * (1.0 - t) * (1.0 - t);
      return du == 0.0 ? cplx(0.0) : (hi - lo) * du * g(lo + (hi - lo) * u);
    };
  }

  quad::Estimate<cplx> box(double a1, double b1, double a2, double b2) {
    std::vector<double> outer_breaks;
    if (!plan_.unit_kernel) {
      for (double z : {plan_.at.theta1, plan_.at.theta1 + kPi}) {
        for (double t = z + kTwoPi * std::ceil((a1 - z) / kTwoPi); t < b1; t += kTwoPi)
          if (t > a1) outer_breaks.push_back(t);
      }
    }
    std::sort(outer_breaks.begin(), outer_breaks.end());
    const quad::Tolerance inner_tol{spec_.abs_tol * 0.1, spec_.rel_tol * 0.1, 2000};
    auto inner = [&](double t1) -> cplx {
      auto cuts = zero_breaks(plan_, t1, a2, b2);
      cuts.insert(cuts.begin(), a2);
      cuts.push_back(b2);
      quad::CompensatedSum<cplx> acc;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        if (plan_.positive_only && plan_.scale * pairing_c(plan_, t1, 0.5 * (lo + hi)) <= 0.0) continue;
        auto row = [&](double t2) { return radial(t1, t2); };
        auto e = log_kernel() ? quad::integrate(smoothed(row, lo, hi), 0.0, 1.0, inner_tol)
                              : quad::integrate(row, lo, hi, inner_tol);
        if (!e.converged) converged_ = false;
        acc.add(e.value);
      }
      return acc.value();
    };
    auto e = quad::integrate(inner, a1, b1, spec_.tolerance(), outer_breaks);
    e.converged = e.converged && converged_;
    return e;
  }

  // Polar tensor rule around the disc centre; falls back to the bounding box
  // when the kernel argument changes sign inside the disc.
  quad::Estimate<cplx> disc(const AngularPatch& p) {
    const double w = p.w1;
    double cmin = INFINITY, cmax = -INFINITY;
    for (int i = 0; i <= 16; ++i)
      for (int j = 0; j < 32; ++j) {
        const double d = w * i / 16.0, phi = kTwoPi * j / 32.0;
        const double c = pairing_c(plan_, p.c1 + d * std::cos(phi), p.c2 + d * std::sin(phi));
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
      }
    if (plan_.unit_kernel) cmin = cmax = 1.0;
    if (cmin * cmax <= 0.0 || std::min(std::abs(cmin), std::abs(cmax)) < 1e-3)
      return box(p.c1 - w, p.c1 + w, p.c2 - w, p.c2 + w);
    if (plan_.positive_only && plan_.scale * cmin <= 0.0 && plan_.scale * cmax <= 0.0) return {};

    auto rule = [&](int nd, int nphi) {
      const auto& gl = quad::gauss_legendre(nd);
      quad::CompensatedSum<cplx> acc;
      for (int i = 0; i < nd; ++i) {
        const double d = 0.5 * w * (gl.nodes[i] + 1.0);
        const double wd = 0.5 * w * gl.weights[i] * d * kTwoPi / nphi;
        for (int j = 0; j < nphi; ++j) {
          const double phi = kTwoPi * j / nphi;
          acc.add(wd * radial(p.c1 + d * std::cos(phi), p.c2 + d * std::sin(phi)));
        }
      }
      return acc.value();
    };
    quad::Estimate<cplx> out;
    cplx prev = rule(12, 16);
    for (int level = 1; level <= 4; ++level) {
      const int nd = 12 << level, nphi = 16 << level;
      const cplx cur = rule(nd, nphi);
      out.value = cur;
      out.error = std::abs(cur - prev);
      out.evaluations += nd * nphi;
      if (out.error <= std::max(spec_.abs_tol, spec_.rel_tol * std::abs(cur))) {
        out.converged = converged_;
        return out;
      }
      prev = cur;
    }
    out.converged = false;
    return out;
  }

  const ConeFunction& f_;
  KernelPlan plan_;
  QuadratureSpec spec_;
  bool converged_ = true;
  std::mutex mutex_;
  std::map<int, double> radius_;
};

double psi0_or_zero(double t) { return t == 0.0 ? 0.0 : psi0(t); }

}  // namespace

quad::Estimate<cplx> op_FCstar(const ConeFunction& f, const ConePoint& xi, const QuadratureSpec& spec) {
  KernelPlan plan{psi0_or_zero, Pairing::plus, xi.r, false, cplx(-1.0 / kPi, 0.0), xi};
  return OperatorEngine(f, plan, spec).run();
}

quad::Estimate<cplx> op_FC(const ConeFunction& f, const ConePoint& xi, const QuadratureSpec& spec) {
  KernelPlan plan{psi0_or_zero, Pairing::minus, -xi.r, false, cplx(-1.0 / kPi, 0.0), xi};
  return OperatorEngine(f, plan, spec).run();
}

quad::Estimate<cplx> op_PlHatPrime(const ConeFunction& f, double R, const ConePoint& xi, const QuadratureSpec& spec) {
  if (!(R > 0)) throw std::domain_error("op_PlHatPrime: R must be positive");
  KernelPlan plan{phi0_plus, Pairing::minus, -0.25 * R * R * xi.r, true, cplx(0.0, 1.0 / (4.0 * kPi)), xi};
  return OperatorEngine(f, plan, spec).run();
}

quad::Estimate<double> l2_norm_squared(const ConeFunction& f, const QuadratureSpec& spec) {
  ConeFunction g;
  g.eval = [&f](double r, double t1, double t2) { return cplx(0.5 * std::norm(f.eval(r, t1, t2)), 0.0); };
  g.decay = f.decay;
  g.decay.C = 0.5 * f.decay.C * f.decay.C;
  g.decay.q = 2.0 * f.decay.q;
  g.decay.a = 2.0 * f.decay.a;
  g.support = f.support;
  KernelPlan plan{[](double) { return 1.0; }, Pairing::minus, 1.0, false, cplx(1.0, 0.0), ConePoint{}, true};
  auto e = OperatorEngine(g, plan, spec).run();
  return {e.value.real(), e.error, e.evaluations, e.converged};
}

// ---------------------------------------------------------------------------
// Test functions f_{xi,eps}

namespace {

double bump(double d, double w) {
  if (d >= w) return 0.0;
  const double x = d / w;
  return std::exp(-1.0 / (1.0 - x * x));
}

// Smallest |c| over a bump disc centred at (0, pi) relative to base_xi.
double min_pairing(double w) {
  double m = INFINITY;
  for (int j = 0; j < 720; ++j) {
    const double phi = kTwoPi * j / 720;
    m = std::min(m, std::cos(w * std::cos(phi)) + std::cos(w * std::sin(phi)));
  }
  return m;
}

double profile_value(RadialProfile p, double u) {
  return p == RadialProfile::exp_linear ? std::exp(-u) : std::exp(-std::sqrt(u));
}

}  // namespace

double TestFunctionFxiEps::psi(double theta1, double theta2) const {
  const double d1 = wrap(theta1 - base_xi.theta1), d2 = wrap(theta2 - base_xi.theta2);
  const double plus = bump(std::hypot(d1, wrap(d2 - kPi)), width);
  const double minus = bump(std::hypot(wrap(d1 - kPi), d2), width);
  return plus + (parity_eps ? -minus : minus);
}

cplx TestFunctionFxiEps::operator()(const ConePoint& p) const {
  const double ps = psi(p.theta1, p.theta2);
  if (ps == 0.0) return 0.0;
  const double u = std::abs(base_xi.r * p.r * (std::cos(p.theta1 - base_xi.theta1) - std::cos(p.theta2 - base_xi.theta2)));
  return ps / std::sqrt(u) * profile_value(profile, u);
}

ConeFunction TestFunctionFxiEps::as_cone_function() const {
  ConeFunction f;
  const TestFunctionFxiEps self = *this;
  f.eval = [self](double r, double t1, double t2) { return self(ConePoint{r, t1, t2}); };
  const double a = base_xi.r * 0.999 * min_pairing(width);
  f.decay.kind = DecayKind::exponential;
  f.decay.C = std::exp(-1.0) / std::sqrt(a);
  f.decay.q = -0.5;
  if (profile == RadialProfile::exp_linear) {
    f.decay.a = a;
    f.decay.p = 1.0;
  } else {
    f.decay.a = std::sqrt(a);
    f.decay.p = 0.5;
  }
  AngularPatch plus{AngularPatch::disc, base_xi.theta1, base_xi.theta2 + kPi, width, width};
  AngularPatch minus{AngularPatch::disc, base_xi.theta1 + kPi, base_xi.theta2, width, width};
  f.support = {plus, minus};
  return f;
}

double TestFunctionFxiEps::angular_weight() const {
  const auto& gl = quad::gauss_legendre(96);
  const int nphi = 192;
  quad::CompensatedSum<double> acc;
  for (int i = 0; i < 96; ++i) {
    const double d = 0.5 * width * (gl.nodes[i] + 1.0);
    for (int j = 0; j < nphi; ++j) {
      const double phi = kTwoPi * j / nphi;
      const double a = d * std::cos(phi), b = kPi + d * std::sin(phi);
      const double c = base_xi.r * (std::cos(a) - std::cos(b));
      acc.add(0.5 * width * gl.weights[i] * d * (kTwoPi / nphi) * bump(d, width) / (c * c));
    }
  }
  return acc.value();
}

TestFunctionFxiEps make_f_xi_eps(const ConePoint& base_xi, int parity_eps, RadialProfile profile) {
  if (!(base_xi.r > 0)) throw std::domain_error("make_f_xi_eps: base point must be nonzero");
  if (parity_eps != 0 && parity_eps != 1) throw std::invalid_argument("make_f_xi_eps: parity must be 0 or 1");
  return TestFunctionFxiEps{base_xi, parity_eps, profile, 0.8};
}

double fc_theta_integrand(double s, double theta, int parity_eps) {
  const double c = std::cosh(theta);
  if (c * c * s > 1e100) return 0.0;
  const double t1 = 1.0 / std::pow(1.0 + 2.0 * std::sqrt(2.0 * s) * c, 3);
  const double t2 = (1.0 - 24.0 * c * c * s) / std::pow(1.0 + 8.0 * c * c * s, 3);
  return 8.0 / (kPi * kPi) * (t1 + (parity_eps ? -t2 : t2));
}

double plhat_theta_integrand(double R, double s, double theta, int parity_eps) {
  const double c = std::cosh(theta);
  if (c * c * R * R * s > 1e100) return 0.0;
  const double num = 3.0 * R * c * std::sqrt(s) - 2.0 * R * R * R * c * c * c * s * std::sqrt(s);
  const double v = 2.0 * std::sqrt(2.0) / (kPi * kPi) * num / std::pow(1.0 + 2.0 * R * R * c * c * s, 3);
  return parity_eps ? -v : v;
}

namespace {

template <typename F>
double theta_chain(F&& g, double s) {
  if (!(s > 0)) throw std::domain_error("theta chain: s must be positive");
  // The integrand changes on the scale cosh(theta) ~ s^{-1/2}.
  const double knee = std::acosh(std::max(1.0, 1.0 / std::sqrt(s)));
  const std::array<double, 3> breaks = {0.5 * knee, knee, knee + 2.0};
  return quad::integrate_half_line(g, 0.0, {1e-15, 1e-12, 4000}, breaks).value;
}

}  // namespace

double fc_theta_chain(double s, int parity_eps) {
  return theta_chain([&](double t) { return fc_theta_integrand(s, t, parity_eps); }, s);
}

double plhat_theta_chain(double R, double s, int parity_eps) {
  return theta_chain([&](double t) { return plhat_theta_integrand(R, s, t, parity_eps); }, R * R * s);
}

double TestFunctionFxiEps::fc_ray_chain(double s) const { return angular_weight() * fc_theta_chain(s, parity_eps); }

cplx TestFunctionFxiEps::plhat_ray_chain(double R, double s) const {
  return {0.0, angular_weight() * plhat_theta_chain(R, s, parity_eps)};
}

}  // namespace conekit
