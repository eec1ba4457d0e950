#include "conekit/kernels.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "conekit/special_functions.hpp"

namespace conekit {

namespace {

constexpr double kPi = std::numbers::pi;

void require_sign(int s, const char* what) {
  if (s != 1 && s != -1) throw std::invalid_argument(std::string(what) + " must be +1 or -1");
}

}  // namespace

double psi0(double t) {
  if (t == 0.0 || std::isnan(t)) throw std::domain_error("psi0: t = 0 is a logarithmic singularity");
  if (t > 0) return bessel_y0(2.0 * std::sqrt(2.0 * t));
  return -2.0 / kPi * bessel_k0(2.0 * std::sqrt(-2.0 * t));
}

double phi0_plus(double t) {
  if (std::isnan(t)) throw std::domain_error("phi0_plus: NaN argument");
  if (t <= 0) return 0.0;
  return bessel_j0(2.0 * std::sqrt(2.0 * t));
}

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0) || !(rel_tol >= 0)) throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
  if (!(truncation_T > 0)) throw std::invalid_argument("QuadratureSpec: truncation_T must be positive");
  if (epsilon_ladder.empty()) throw std::invalid_argument("QuadratureSpec: empty epsilon ladder");
  for (std::size_t i = 0; i < epsilon_ladder.size(); ++i) {
    if (!(epsilon_ladder[i] > 0)) throw std::invalid_argument("QuadratureSpec: ladder must be positive");
    if (i > 0 && !(epsilon_ladder[i] < epsilon_ladder[i - 1]))
      throw std::invalid_argument("QuadratureSpec: ladder must be strictly decreasing");
  }
  if (extrapolation_order < 0 || extrapolation_order >= static_cast<int>(epsilon_ladder.size()))
    throw std::invalid_argument("QuadratureSpec: extrapolation order needs order+1 ladder points");
}

cplx ft_closed_form(double R, double q, int sign_R2, int sign_eps) {
  if (!(R > 0)) throw std::domain_error("ft_closed_form: R must be positive");
  if (q == 0.0 || std::isnan(q)) throw std::domain_error("ft_closed_form: q = 0 lies on the cone");
  require_sign(sign_R2, "sign_R2");
  require_sign(sign_eps, "sign_eps");
  // With +R^2 the roles of timelike and spacelike swap and the i J_0 term
  // changes sign.
  const double eff = sign_R2 < 0 ? q : -q;
  const double u = R * std::sqrt(std::abs(q));
  if (eff < 0) return {-0.5 * bessel_k0(u), 0.0};
  const double js = sign_R2 < 0 ? sign_eps : -sign_eps;
  return {kPi / 4 * bessel_y0(u), js * kPi / 4 * bessel_j0(u)};
}

cplx FtClosedForm::value() const { return ft_closed_form(R, q, sign_R2, sign_eps); }

namespace {

// The reduced integral splits into |x1| > |x3| (region 0) and |x1| < |x3|
// (region 1). After the t integration each region is
//   2 int_0^inf s F(s) / D(s) ds,
// F(s) = int_R cos(R s (r1 cosh t + r2 sinh t)) dt in region 0 and the
// sinh/cosh swap in region 1, D(s) = +-s^2 + sign_R2 + i sign_eps eta.
class HyperbolicReduction {
 public:
  HyperbolicReduction(double R, double r1, double r2, int sign_R2, int sign_eps, const QuadratureSpec& spec)
      : R_(R), r1_(r1), r2_(r2), sR_(sign_R2), sE_(sign_eps), spec_(spec) {
    const double q = r1 * r1 - r2 * r2;
    scale_ = R * std::sqrt(std::abs(q));
  }

  quad::Estimate<cplx> at(double eps) {
    const double eta = eps / (R_ * R_);
    quad::Estimate<cplx> total;
    for (int region = 0; region < 2; ++region) {
      const double side = region == 0 ? 1.0 : -1.0;
      auto integrand = [&](double s) {
        const cplx d(side * s * s + sR_, sE_ * eta);
        return 2.0 * s * F(region, s) / d;
      };
      const quad::Tolerance tol{spec_.abs_tol, spec_.rel_tol, 4000};
      static const std::array<double, 7> breaks = {0.25, 0.5, 0.8, 0.95, 1.0, 1.05, 1.2};
      auto head = quad::integrate(integrand, 0.0, kHead, tol, breaks);
      auto tail = quad::periodic_tail(integrand, kHead, kPi / scale_, tol);
      total.value += head.value + tail.value;
      total.error += head.error + tail.error;
      total.evaluations += head.evaluations + tail.evaluations;
      total.converged = total.converged && head.converged && tail.converged;
    }
    const cplx pref(0.0, -sE_ * kPi);
    total.value *= pref / (4.0 * kPi * kPi);
    total.error *= kPi / (4.0 * kPi * kPi);
    return total;
  }

 private:
  static constexpr double kHead = 2.0;

  double F(int region, double s) {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache_[region].find(s);
      if (it != cache_[region].end()) return it->second;
    }
    const double a = region == 0 ? R_ * s * r2_ : R_ * s * r1_;
    const double b = region == 0 ? R_ * s * r1_ : R_ * s * r2_;
    const quad::Tolerance tol{1e-13, 1e-12, 4000};
    auto est = quad::hyperbolic_oscillatory(a, b, quad::Trig::cos, tol, spec_.truncation_T);
    if (!est.converged) throw ConvergenceError("ft_regularized: inner hyperbolic integral did not converge");
    std::lock_guard<std::mutex> lock(mutex_);
    cache_[region].emplace(s, est.value);
    return est.value;
  }

  double R_, r1_, r2_;
  int sR_, sE_;
  QuadratureSpec spec_;
  double scale_;
  std::mutex mutex_;
  std::map<double, double> cache_[2];
};

void split_radii(const DualVector<double>& xi, double& r1, double& r2) {
  r1 = std::hypot(xi.xi[0], xi.xi[1]);
  r2 = std::hypot(xi.xi[2], xi.xi[3]);
  const double q = r1 * r1 - r2 * r2;
  if (!(std::abs(q) > 1e-12 * (r1 * r1 + r2 * r2)) || r1 + r2 == 0.0)
    throw std::domain_error("ft_regularized: <xi, xi> = 0 is excluded");
}

}  // namespace

FtResult ft_at_epsilon(double R, const DualVector<double>& xi, int sign_R2, int sign_eps, double eps,
                       const QuadratureSpec& spec) {
  if (!(R > 0)) throw std::domain_error("ft_at_epsilon: R must be positive");
  require_sign(sign_R2, "sign_R2");
  require_sign(sign_eps, "sign_eps");
  double r1, r2;
  split_radii(xi, r1, r2);
  HyperbolicReduction red(R, r1, r2, sign_R2, sign_eps, spec);
  auto est = red.at(eps);
  FtResult out;
  out.value = est.value;
  out.error = est.error;
  out.ladder = {est.value};
  out.converged = est.converged;
  return out;
}

FtResult ft_regularized(double R, const DualVector<double>& xi, int sign_R2, int sign_eps,
                        const QuadratureSpec& spec) {
  if (!(R > 0)) throw std::domain_error("ft_regularized: R must be positive");
  require_sign(sign_R2, "sign_R2");
  require_sign(sign_eps, "sign_eps");
  spec.validate();
  double r1, r2;
  split_radii(xi, r1, r2);
  HyperbolicReduction red(R, r1, r2, sign_R2, sign_eps, spec);
  // eps enters through R^2 + i eps, so the ladder is measured in units of R^2
  // once R < 1.
  std::vector<double> ladder = spec.epsilon_ladder;
  for (double& e : ladder) e *= std::min(1.0, R * R);
  auto values = quad::parallel_map(
      ladder.size(), [&](std::size_t i) { return red.at(ladder[i]); }, spec.workers);
  FtResult out;
  double quad_err = 0.0;
  for (const auto& v : values) {
    out.ladder.push_back(v.value);
    quad_err = std::max(quad_err, v.error);
    out.converged = out.converged && v.converged;
  }
  auto ex = quad::extrapolate_to_zero<cplx>(ladder, out.ladder, spec.extrapolation_order);
  out.value = ex.value;
  out.error = ex.error + quad_err;
  if (!out.converged) throw ConvergenceError("ft_regularized: quadrature budget exhausted");
  return out;
}

FtResult ft_damped_oracle(double R, const DualVector<double>& xi, int sign_R2, int sign_eps, double eps,
                          std::vector<double> deltas) {
  if (!(R > 0)) throw std::domain_error("ft_damped_oracle: R must be positive");
  double r1, r2;
  split_radii(xi, r1, r2);
  const cplx c(sign_R2 * R * R, sign_eps * eps);
  std::vector<cplx> values;
  for (double delta : deltas) {
    const double L = std::sqrt(40.0 / delta);
    const quad::Tolerance inner_tol{1e-10, 1e-8, 4000};
    const quad::Tolerance outer_tol{1e-9, 1e-7, 4000};
    auto outer = [&](double x3) {
      std::vector<double> br;
      const double p2 = x3 * x3 - sign_R2 * R * R;
      if (p2 > 0) {
        const double p = std::sqrt(p2);
        for (double w : {-8.0, -2.0, -0.5, 0.0, 0.5, 2.0, 8.0}) br.push_back(p + w * eps / (2 * p + eps));
      }
      auto inner = [&](double x1) {
        return std::cos(r1 * x1) * std::exp(-delta * x1 * x1) / (x1 * x1 - x3 * x3 + c);
      };
      auto v = quad::integrate(inner, 0.0, L, inner_tol, br);
      return v.value * std::cos(r2 * x3) * std::exp(-delta * x3 * x3);
    };
    std::vector<double> br3;
    if (sign_R2 > 0) {
      for (double w : {-8.0, -2.0, -0.5, 0.0, 0.5, 2.0, 8.0}) br3.push_back(R + w * eps / (2 * R));
    }
    auto v = quad::integrate(outer, 0.0, L, outer_tol, br3);
    values.push_back(4.0 * v.value * cplx(0.0, -sign_eps * kPi) / (4.0 * kPi * kPi));
  }
  auto ex = quad::extrapolate_to_zero<cplx>(deltas, values, static_cast<int>(deltas.size()) - 1);
  FtResult out;
  out.value = ex.value;
  out.error = ex.error;
  out.ladder = values;
  return out;
}

CorollaryValues corollary_kernels(double R, const ConePoint& xi, const ConePoint& xi2, const QuadratureSpec& spec) {
  if (!(R > 0)) throw std::domain_error("corollary_kernels: R must be positive");
  const double p = cone_pair(xi, xi2);
  if (std::abs(p) < 1e-12 * xi.r * xi2.r) throw std::domain_error("corollary_kernels: lightlike separated pair");
  const DualVector<double> d = cone_embed(xi) - cone_embed(xi2);
  auto sp = ft_regularized(2.0, d, -1, 1, spec);
  auto sm = ft_regularized(2.0, d, -1, -1, spec);
  auto ap = ft_regularized(R, d, -1, 1, spec);
  auto am = ft_regularized(R, d, -1, -1, spec);
  CorollaryValues out;
  out.symmetric = sp.value + sm.value;
  out.antisymmetric = ap.value - am.value;
  out.error = sp.error + sm.error + ap.error + am.error;
  return out;
}

LemmaValues lemma_kernel_integrals(double R, const ConePoint& xi, const ConePoint& xi2, const QuadratureSpec& spec) {
  if (!(R > 0)) throw std::domain_error("lemma_kernel_integrals: R must be positive");
  const DualVector<double> d = cone_embed(xi) - cone_embed(xi2);
  LemmaValues out;
  out.r1 = std::hypot(d.xi[0], d.xi[1]);
  out.r2 = std::hypot(d.xi[2], d.xi[3]);
  if (out.r1 == 0.0 && out.r2 == 0.0) throw std::domain_error("lemma_kernel_integrals: r1 = r2 = 0");
  out.slow = std::abs(out.r1 - out.r2) < 0.2 * std::max(out.r1, out.r2);
  const double p = cone_pair(xi, xi2);
  const double a = R * out.r1, b = R * out.r2;
  quad::Tolerance tol{std::min(spec.abs_tol, 1e-12), std::min(spec.rel_tol, 1e-11), 4000};
  if (out.slow) tol.max_intervals *= 4;
  const auto i1 = quad::hyperbolic_oscillatory(a, b, quad::Trig::cos, tol, spec.truncation_T);
  const auto i2 = quad::hyperbolic_oscillatory(b, a, quad::Trig::cos, tol, spec.truncation_T);
  const auto i3 = quad::hyperbolic_oscillatory(a, b, quad::Trig::sin, tol, spec.truncation_T);
  const auto i4 = quad::hyperbolic_oscillatory(b, a, quad::Trig::sin, tol, spec.truncation_T);
  out.integral = {-i1.value / kPi, -i2.value / kPi, i3.value / kPi, i4.value / kPi};
  out.error = {i1.error / kPi, i2.error / kPi, i3.error / kPi, i4.error / kPi};
  const double t = R * R / 4.0 * p;
  out.closed = {psi0(t), psi0(-t), phi0_plus(t), phi0_plus(-t)};
  if (out.slow)
    for (double& e : out.error) e *= 10.0;
  return out;
}

quad::Estimate<cplx> extrapolate_basis(std::span<const double> h, std::span<const cplx> y,
                                       const std::vector<std::function<double(double)>>& basis) {
  const int n = static_cast<int>(h.size());
  const int m = static_cast<int>(basis.size());
  if (n != static_cast<int>(y.size()) || m == 0 || m > n) throw std::invalid_argument("extrapolate_basis: sizes");
  auto solve = [&](int terms) {
    Eigen::MatrixXd A(n, terms);
    Eigen::VectorXd br(n), bi(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < terms; ++j) A(i, j) = basis[j](h[i]);
      br[i] = y[i].real();
      bi[i] = y[i].imag();
    }
    auto qr = A.colPivHouseholderQr();
    Eigen::VectorXd cr = qr.solve(br), ci = qr.solve(bi);
    cplx at_zero(0.0, 0.0);
    for (int j = 0; j < terms; ++j) at_zero += cplx(cr[j], ci[j]) * basis[j](0.0);
    return at_zero;
  };
  quad::Estimate<cplx> out;
  out.value = solve(m);
  out.error = m > 1 ? std::abs(out.value - solve(m - 1)) : 0.0;
  return out;
}

double DeltaConeResult::rel_difference() const {
  const double scale = std::max(std::abs(surface), std::abs(volume));
  return scale == 0.0 ? 0.0 : std::abs(surface - volume) / scale;
}

namespace {

// Angular average on S^1 x S^1 of psi at radii (r1, r2), by the periodic
// trapezoid rule: int int psi da db.
cplx angular_integral(const AmbientFunction& psi, double r1, double r2, int m) {
  quad::CompensatedSum<cplx> acc;
  const double h = 2.0 * kPi / m;
  for (int i = 0; i < m; ++i) {
    const double a = i * h;
    const double ca = std::cos(a), sa = std::sin(a);
    for (int j = 0; j < m; ++j) {
      const double b = j * h;
      acc.add(psi(SplitQuaternion<double>(r1 * ca, r1 * sa, r2 * std::cos(b), r2 * std::sin(b))));
    }
  }
  return acc.value() * h * h;
}

}  // namespace

DeltaConeResult delta_cone_apply(const AmbientFunction& psi, const QuadratureSpec& spec, const DeltaConeOptions& opts) {
  const int m = opts.angular_points;
  const quad::Tolerance tol{spec.abs_tol, std::max(spec.rel_tol, 1e-10), 4000};
  DeltaConeResult out;

  // Surface route: with sigma = 2 r^2, (1/2) r dr = d sigma / 8.
  auto surface_integrand = [&](double sigma) {
    const double r = std::sqrt(0.5 * sigma);
    return angular_integral(psi, r, r, m) / 8.0;
  };
  out.surface = quad::integrate_half_line(surface_integrand, 0.0, tol).value;

  // Volume route in N = r1^2 - r2^2, sigma = r1^2 + r2^2: r1 r2 dr1 dr2 = dN dsigma / 8.
  std::map<double, cplx> shell_cache;
  auto shell = [&](double n) {
    auto it = shell_cache.find(n);
    if (it != shell_cache.end()) return it->second;
    const double a = std::abs(n);
    auto inner = [&](double sigma) {
      const double r1 = std::sqrt(std::max(0.0, 0.5 * (sigma + n)));
      const double r2 = std::sqrt(std::max(0.0, 0.5 * (sigma - n)));
      return angular_integral(psi, r1, r2, m) / 8.0;
    };
    cplx v = quad::integrate_half_line(inner, a, tol).value;
    shell_cache.emplace(n, v);
    return v;
  };
  double n_max = 1.0;
  const double g0 = std::abs(shell(0.0)) + 1e-300;
  while (std::abs(shell(n_max)) + std::abs(shell(-n_max)) > 1e-15 * g0 && n_max < 1e4) n_max *= 2.0;
  std::vector<double> breaks{0.0};
  for (double b = opts.epsilon_ladder.back() / 8.0; b < n_max; b *= 2.0) {
    breaks.push_back(b);
    breaks.push_back(-b);
  }
  for (double eps : opts.epsilon_ladder) {
    auto integrand = [&](double n) { return eps / (kPi * (n * n + eps * eps)) * shell(n); };
    out.ladder.push_back(quad::integrate(integrand, -n_max, n_max, tol, breaks).value);
  }
  // The shell function has a |N| kink at the vertex, so the limit carries
  // eps log eps terms.
  std::vector<std::function<double(double)>> basis = {
      [](double) { return 1.0; },
      [](double e) { return e > 0 ? e * std::log(e) : 0.0; },
      [](double e) { return e; },
      [](double e) { return e * e; },
      [](double e) { return e > 0 ? e * e * e * std::log(e) : 0.0; },
      [](double e) { return e * e * e; },
  };
  basis.resize(std::min(basis.size(), opts.epsilon_ladder.size()));
  auto ex = extrapolate_basis(opts.epsilon_ladder, out.ladder, basis);
  out.volume = ex.value;
  out.volume_error = ex.error;
  return out;
}

}  // namespace conekit
