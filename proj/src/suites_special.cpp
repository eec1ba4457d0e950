// bessel, kernels, fourier, corollary and lemma suites.
#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/differentiation/finite_difference.hpp>

#include "conekit/cone_operators.hpp"
#include "conekit/geometry.hpp"
#include "conekit/kernels.hpp"
#include "conekit/special_functions.hpp"
#include "suite_detail.hpp"

namespace conekit::report::detail {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> log_grid(double a, double b, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(a * std::pow(b / a, double(i) / (n - 1)));
  return out;
}

ConePoint random_cone_point(Sampler& s, double rmin, double rmax) {
  ConePoint p;
  p.r = s.uniform(rmin, rmax);
  p.theta1 = s.uniform(0.0, 2.0 * kPi);
  p.theta2 = s.uniform(0.0, 2.0 * kPi);
  return p;
}

Json point_json(const ConePoint& p) { return Json{p.r, p.theta1, p.theta2}; }

// ---------------------------------------------------------------------------

void bessel_krel(CheckSink& sink) {
  const int m = sink.samples(40);
  std::vector<double> rs = {0.1, 5.0};
  for (int i = 0; i < m; ++i) rs.push_back(sink.sampler().log_uniform(0.1, 5.0));
  for (int n = -5; n <= 5; ++n) {
    Worst w;
    for (double r : rs) {
      const double lhs = r * r * ktilde(n + 1, 2 * r);
      const double rhs = n * ktilde(n, 2 * r) + ktilde(n - 1, 2 * r);
      const double a = std::abs(lhs - rhs), rel = a / std::abs(ktilde(n, 2 * r));
      w.update(rel, r, lhs, rhs, a, rel);
    }
    sink.record("bessel.krel.n" + std::to_string(n), "k-bessel-recurrence",
                {{"n", n}, {"points", rs.size()}, {"worst_r", w.where}, {"normalized_by", "|Kt_n(2r)|"}},
                w.computed, w.reference, w.abs_err, w.rel_err, 1e-10, "rel");
  }
}

void bessel_derivatives(CheckSink& sink) {
  const int m = sink.samples(20);
  std::vector<double> rs = {0.1, 5.0};
  for (int i = 0; i < m; ++i) rs.push_back(sink.sampler().log_uniform(0.1, 5.0));
  // d/dr Kt_n(2r) = -2r Kt_{n+1}(2r)
  for (int n = -5; n <= 5; ++n) {
    Worst w;
    for (double r : rs) {
      const double h = 1e-5 * std::max(1.0, r);
      const double fd = (ktilde(n, 2 * (r + h)) - ktilde(n, 2 * (r - h))) / (2 * h);
      const double exact = -2 * r * ktilde(n + 1, 2 * r);
      const double a = std::abs(fd - exact);
      w.update(a / std::abs(exact), r, fd, exact, a, a / std::abs(exact));
    }
    sink.record("bessel.derivative.n" + std::to_string(n), "k-bessel-derivative", {{"n", n}, {"worst_r", w.where}},
                w.computed, w.reference, w.abs_err, w.rel_err, 1e-6, "rel");
  }
  // (-2 d/(r dr))^m Kt_n(r) = Kt_{n+m}(r), m = 1, 2, by nested differences.
  // Eighth-order differences in t = log r: -2/(r dr) = -2/r^2 d/dt. Kt_n
  // behaves like exp(-2 n t), so t is rescaled by the exponent.
  namespace bd = boost::math::differentiation;
  auto ddt = [](auto&& f, double t, double scale) {
    auto g = [&](double u) { return f(t + u / scale); };
    return scale * bd::finite_difference_derivative<decltype(g), double, 8>(g, 0.0);
  };
  auto d1 = [&](int n, double t) {
    return -2.0 * std::exp(-2 * t) * ddt([n](double u) { return ktilde(n, std::exp(u)); }, t, std::max(1, 2 * n));
  };
  auto d2 = [&](int n, double t) {
    return -2.0 * std::exp(-2 * t) * ddt([&, n](double u) { return d1(n, u); }, t, std::max(1, 2 * n + 2));
  };
  for (int mm = 1; mm <= 2; ++mm) {
    for (int n = -5; n <= 5; ++n) {
      Worst w;
      for (double r : rs) {
        const double rr = r;
        const double fd = mm == 1 ? d1(n, std::log(rr)) : d2(n, std::log(rr));
        const double exact = ktilde(n + mm, rr);
        const double a = std::abs(fd - exact);
        w.update(a / std::abs(exact), rr, fd, exact, a, a / std::abs(exact));
      }
      sink.record("bessel.iterated_derivative.m" + std::to_string(mm) + ".n" + std::to_string(n),
                  "k-bessel-iterated-derivative", {{"m", mm}, {"n", n}, {"worst_r", w.where}}, w.computed,
                  w.reference, w.abs_err, w.rel_err, 1e-6, "rel");
    }
  }
  // Kt_0 = K_0
  sink.compare("bessel.ktilde.n0", "renormalized-k-bessel", {{"r", 1.7}}, ktilde(0, 1.7), bessel_k0(1.7), 1e-15);
}

void bessel_oracles(CheckSink& sink) {
  const auto grid = log_grid(0.1, 20.0, 20);
  const quad::Tolerance tol{1e-12, 1e-12, 4000};
  struct Fn {
    const char* name;
    const char* anchor;
    double (*primary)(double);
    quad::Estimate<double> (*oracle)(double, const quad::Tolerance&);
  };
  const Fn fns[] = {
      {"j0", "bessel-jy-integral-representation", bessel_j0, oracle::j0_integral},
      {"y0", "bessel-jy-integral-representation", bessel_y0, oracle::y0_integral},
      {"k0", "bessel-k-integral-representation", bessel_k0, oracle::k0_exp_integral},
      {"k1", "bessel-k-integral-representation", bessel_k1,
       [](double u, const quad::Tolerance& t) { return oracle::kn_exp_integral(1, u, t); }},
  };
  for (const auto& f : fns) {
    Worst w;
    for (double u : grid) {
      const double p = f.primary(u), o = f.oracle(u, tol).value;
      const double a = std::abs(p - o);
      w.update(a, u, p, o, a, a / std::abs(o));
    }
    sink.record(std::string("bessel.oracle.") + f.name, f.anchor,
                {{"grid", "20-point log grid on [0.1, 20]"}, {"worst_u", w.where}}, w.computed, w.reference,
                w.abs_err, w.rel_err, 1e-8, "abs");
  }
  for (int n : {2, 3}) {
    Worst w;
    for (double u : grid) {
      const double p = bessel_kn(n, u), o = oracle::kn_exp_integral(n, u, tol).value;
      const double a = std::abs(p - o);
      w.update(a / std::abs(o), u, p, o, a, a / std::abs(o));
    }
    sink.record("bessel.oracle.k" + std::to_string(n), "bessel-k-integral-representation",
                {{"grid", "20-point log grid on [0.1, 20]"}, {"worst_u", w.where}}, w.computed, w.reference,
                w.abs_err, w.rel_err, 1e-8, "rel");
  }
  for (double u : {0.5, 1.0, 3.0}) {
    const double a = oracle::k0_cos_integral(u, tol).value, b = oracle::k0_exp_integral(u, tol).value;
    sink.compare("bessel.k0_forms.u" + std::to_string(int(u * 10)), "bessel-k-integral-representation", {{"u", u}}, a,
                 b, 1e-8, "abs");
  }
}

void bessel_branches(CheckSink& sink) {
  // Series against the asymptotic expansion, certified by the size of the
  // first omitted Hankel term.
  struct Pair {
    const char* name;
    double (*series)(double);
    double (*asymptotic)(double);
  };
  const Pair pairs[] = {{"j0", bessel_detail::j0_series, bessel_detail::j0_asymptotic},
                        {"y0", bessel_detail::y0_series, bessel_detail::y0_asymptotic}};
  for (const auto& p : pairs) {
    Worst w;
    for (int i = 0; i <= 24; ++i) {
      const double u = 6.0 + 0.25 * i;
      const double s = p.series(u), a = p.asymptotic(u);
      const double bound = BesselEvaluator::hankel_remainder_bound(u) + 1e-13;
      const double d = std::abs(s - a);
      w.update(d / bound, u, s, a, d / bound, d / std::abs(a));
    }
    sink.record(std::string("bessel.overlap.") + p.name, "bessel-branch-overlap",
                {{"window", Json{6.0, 12.0}}, {"worst_u", w.where}, {"normalized_by", "hankel remainder bound"}},
                w.computed, w.reference, w.abs_err, w.rel_err, 1.0, "abs");
  }
  Worst wk;
  for (double u = 1.5; u <= 3.0001; u += 0.25) {
    double k0, k1;
    bessel_detail::k01_continued_fraction(u, k0, k1);
    for (auto [x, y] : {std::pair{k0, bessel_detail::k0_series(u)}, std::pair{k1, bessel_detail::k1_series(u)}})
      wk.update(std::abs(x / y - 1), u, x, y, std::abs(x - y), std::abs(x / y - 1));
  }
  for (double u = 20.0; u <= 30.0001; u += 2.5) {
    double k0, k1;
    bessel_detail::k01_continued_fraction(u, k0, k1);
    for (auto [x, y] :
         {std::pair{k0, bessel_detail::k0_asymptotic(u)}, std::pair{k1, bessel_detail::k1_asymptotic(u)}})
      wk.update(std::abs(x / y - 1), u, x, y, std::abs(x - y), std::abs(x / y - 1));
  }
  sink.record("bessel.overlap.k01", "bessel-branch-overlap",
              {{"windows", Json{Json{1.5, 3.0}, Json{20.0, 30.0}}}, {"worst_u", wk.where}}, wk.computed, wk.reference,
              wk.abs_err, wk.rel_err, 1e-12, "rel");

  // Sanity values.
  const double u = 400.0;
  sink.compare("bessel.k0_large_argument", "bessel-k-integral-representation", {{"u", u}},
               bessel_k0(u) * std::exp(u) * std::sqrt(u), std::sqrt(kPi / 2), 1e-3);
  const double small = 1e-6;
  sink.compare("bessel.y0_log_divergence", "bessel-jy-integral-representation", {{"u", small}}, bessel_y0(small),
               2.0 / kPi * (std::log(small / 2) + std::numbers::egamma), 1e-10);
  double lo = 2.4, hi = 2.41;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (BesselEvaluator{BesselMethod::series}.j0(mid) > 0 ? lo : hi) = mid;
  }
  sink.compare("bessel.j0_first_zero", "bessel-jy-integral-representation", {{"bracket", Json{2.4, 2.41}}},
               0.5 * (lo + hi), 2.404825557695773, 1e-12);
  sink.compare("bessel.j0_at_zero", "bessel-jy-integral-representation", Json::object(), bessel_j0(0.0), 1.0, 0.0,
               "abs");
}

void gamma_checks(CheckSink& sink) {
  const char* anchor = "complex-gamma-identities";
  const double rho = 0.7;
  sink.compare("bessel.gamma.reflection_half", anchor, {{"rho", rho}},
               gamma_complex({0.5, -rho}) * gamma_complex({0.5, rho}), cplx(kPi / std::cosh(kPi * rho)), 1e-11);
  sink.compare("bessel.gamma.one", anchor, Json::object(), gamma_complex(1.0), cplx(1.0), 1e-14);
  sink.compare("bessel.gamma.half", anchor, Json::object(), gamma_complex(0.5), cplx(std::sqrt(kPi)), 1e-14);
  const int m = sink.samples(20);
  Worst rec, refl;
  auto& s = sink.sampler();
  for (int i = 0; i < m; ++i) {
    cplx z;
    do {
      z = {s.uniform(-2.5, 3.5), s.uniform(-3.0, 3.0)};
    } while (std::abs(z - std::round(z.real())) < 0.1 && z.real() < 0.6);
    const cplx a = gamma_complex(z + 1.0), b = z * gamma_complex(z);
    rec.update(std::abs(a - b) / std::abs(b), cjson(z), cjson(a), cjson(b), std::abs(a - b), std::abs(a - b) / std::abs(b));
    const cplx c = gamma_complex(z) * gamma_complex(1.0 - z), d = kPi / std::sin(kPi * z);
    refl.update(std::abs(c - d) / std::abs(d), cjson(z), cjson(c), cjson(d), std::abs(c - d), std::abs(c - d) / std::abs(d));
  }
  sink.record("bessel.gamma.recurrence", anchor, {{"samples", m}, {"worst_z", rec.where}}, rec.computed, rec.reference,
              rec.abs_err, rec.rel_err, 1e-11, "rel");
  sink.record("bessel.gamma.reflection", anchor, {{"samples", m}, {"worst_z", refl.where}}, refl.computed,
              refl.reference, refl.abs_err, refl.rel_err, 1e-11, "rel");
}

// ---------------------------------------------------------------------------

// Brute-force density of dS/|xi| at radius r0: volume of the delta-shell
// around C between radii r0 -+ dr, weighted by 1/|xi|, per unit thickness
// and radius, in the polar radii (rho1, rho2) of the two planes.
double shell_density_oracle(double r0) {
  const double delta = 1e-4, dr = 1e-3;
  const auto& gl = quad::gauss_legendre(20);
  double acc = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double u = r0 + dr * gl.nodes[i];
    for (int j = 0; j < 20; ++j) {
      const double v = std::sqrt(2.0) * delta * gl.nodes[j];
      const double r1 = u + 0.5 * v, r2 = u - 0.5 * v;
      acc += gl.weights[i] * dr * gl.weights[j] * std::sqrt(2.0) * delta * r1 * r2 / std::hypot(r1, r2);
    }
  }
  return acc / (2 * delta * 2 * dr);
}

void geometry_checks(CheckSink& sink) {
  auto& s = sink.sampler();
  sink.compare("kernels.geometry.norm_unit", "split-quaternion-norm", Json::object(),
               norm(SplitQuaternion<double>(1, 0, 0, 0)), 1.0, 0.0, "abs");
  sink.compare("kernels.geometry.norm_cone", "split-quaternion-norm", Json::object(),
               norm(SplitQuaternion<double>(1, 0, 1, 0)), 0.0, 0.0, "abs");
  const SplitQuaternion<double> X(0.3, -1.2, 0.5, 2.0);
  sink.compare("kernels.geometry.norm_determinant", "split-quaternion-norm", {{"X", Json{0.3, -1.2, 0.5, 2.0}}},
               norm(X), matrix_realization(X).determinant().real(), 1e-14);

  const int m = sink.samples(100);
  Worst pw;
  for (int i = 0; i < m; ++i) {
    const ConePoint a = random_cone_point(s, 0.1, 3.0), b = random_cone_point(s, 0.1, 3.0);
    const auto xa = cone_embed(a), xb = cone_embed(b);
    const double lhs = pair(xa - xb, xa - xb), rhs = -2.0 * pair(xa, xb);
    const double e = std::abs(lhs - rhs);
    pw.update(e, Json{point_json(a), point_json(b)}, lhs, rhs, e, e / std::abs(rhs));
  }
  sink.record("kernels.geometry.difference_pairing", "cone-difference-pairing", {{"samples", m}, {"worst", pw.where}},
              pw.computed, pw.reference, pw.abs_err, pw.rel_err, 1e-12, "abs");

  // w0 is an involution off the cone.
  auto phi = [](const SplitQuaternion<double>& Y) {
    return cplx(1.0 / (1.0 + Y.x.squaredNorm()), Y.x[1] - 0.5 * Y.x[2] * Y.x[3]);
  };
  const int mi = sink.samples(10000);
  Worst iw;
  for (int i = 0; i < mi; ++i) {
    SplitQuaternion<double> Y(s.uniform(-2, 2), s.uniform(-2, 2), s.uniform(-2, 2), s.uniform(-2, 2));
    if (std::abs(norm(Y)) < 1e-2) continue;
    const cplx twice = w0_act([&](const SplitQuaternion<double>& Z) { return w0_act(phi, Z); }, Y);
    const cplx once = phi(Y);
    const double e = std::abs(twice - once) / std::abs(once);
    iw.update(e, Json{Y[0], Y[1], Y[2], Y[3]}, cjson(twice), cjson(once), std::abs(twice - once), e);
  }
  sink.record("kernels.geometry.w0_involution", "inversion-w0-action", {{"samples", mi}, {"worst_X", iw.where}},
              iw.computed, iw.reference, iw.abs_err, iw.rel_err, 1e-10, "rel");

  // Homogeneous functions of degree 2l: N^l times a degree-0 angular factor.
  const cplx degrees[] = {{-1.0, 0.0}, {-1.0, 1.4}, {0.0, 0.0}, {2.0, 0.0}};
  for (int d = 0; d < 4; ++d) {
    const cplx l = degrees[d] / 2.0;
    auto hom = [l](const SplitQuaternion<double>& Y) {
      return norm_power(Y, l) * (1.0 + Y.x[0] * Y.x[2] / Y.x.squaredNorm());
    };
    Worst hw;
    for (int i = 0; i < 200; ++i) {
      SplitQuaternion<double> Y;
      do {
        Y = SplitQuaternion<double>(s.uniform(-2, 2), s.uniform(-2, 2), s.uniform(-2, 2), s.uniform(-2, 2));
      } while (norm(Y) < 0.05);
      const cplx direct = w0_act(hom, Y);
      const cplx mult = std::pow(2.0, 4.0 * l + 2.0) * std::exp((-2.0 * l - 1.0) * std::log(norm(Y))) * hom(Y);
      const double e = std::abs(direct - mult) / std::abs(mult);
      hw.update(e, Json{Y[0], Y[1], Y[2], Y[3]}, cjson(direct), cjson(mult), std::abs(direct - mult), e);
    }
    sink.record("kernels.geometry.w0_homogeneous.d" + std::to_string(d), "w0-homogeneous-multiplier",
                {{"degree_2l", cjson(degrees[d])}, {"worst_X", hw.where}}, hw.computed, hw.reference, hw.abs_err,
                hw.rel_err, 1e-10, "rel");
  }
  const SplitQuaternion<double> Y(1.2, 0.3, 0.4, -0.1);
  sink.compare("kernels.geometry.w0_constant", "inversion-w0-action", {{"X", Json{1.2, 0.3, 0.4, -0.1}}},
               w0_act([](const SplitQuaternion<double>&) { return 1.0; }, Y), 4.0 / norm(Y), 1e-14);

  for (double r : {0.5, 1.0, 2.0}) {
    sink.compare("kernels.geometry.measure_density.r" + std::to_string(int(r * 10)), "cone-measure-density",
                 {{"r", r}, {"oracle", "thin-shell volume"}}, cone_measure_weight(ConePoint{r, 0.0, 0.0}),
                 shell_density_oracle(r), 1e-6);
  }
  sink.compare("kernels.geometry.half_density", "cone-measure-density", {{"r", 1.0}},
               delta_cone_weight(ConePoint{1.0, 0.0, 0.0}), 0.5, 0.0, "abs");
}

void kernel_values(CheckSink& sink) {
  const quad::Tolerance tol{1e-13, 1e-13, 4000};
  sink.compare("kernels.psi0.timelike", "psi0-kernel", {{"t", -0.5}}, psi0(-0.5),
               -2.0 / kPi * oracle::k0_exp_integral(2.0, tol).value, 1e-10);
  sink.compare("kernels.psi0.spacelike", "psi0-kernel", {{"t", 0.5}}, psi0(0.5), oracle::y0_integral(2.0, tol).value,
               1e-10);
  sink.compare("kernels.phi0.vanishing", "phi0-plus-kernel", {{"t", -3.0}}, phi0_plus(-3.0), 0.0, 0.0, "abs");
  sink.compare("kernels.phi0.origin", "phi0-plus-kernel", {{"t", 1e-14}}, phi0_plus(1e-14), 1.0, 1e-10, "abs");
  sink.compare("kernels.phi0.positive", "phi0-plus-kernel", {{"t", 0.5}}, phi0_plus(0.5),
               oracle::j0_integral(2.0, tol).value, 1e-10);
  // Both branches diverge like (1/pi) log|t|.
  for (int side : {-1, 1}) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int m = 7;
    for (int k = 6; k < 6 + m; ++k) {
      const double t = side * std::pow(10.0, -k), x = std::log(std::abs(t)), y = psi0(t);
      sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    sink.compare(std::string("kernels.psi0.log_slope.") + (side < 0 ? "negative" : "positive"), "psi0-log-divergence",
                 {{"t", "+-10^-k, k = 6..12"}}, slope, 1.0 / kPi, 1e-4);
  }
}

void delta_cone_checks(CheckSink& sink) {
  using SQ = SplitQuaternion<double>;
  const std::pair<const char*, AmbientFunction> gaussians[] = {
      {"isotropic", [](const SQ& X) { return cplx(std::exp(-X.x.squaredNorm())); }},
      {"polynomial", [](const SQ& X) { return cplx(std::exp(-0.5 * X.x.squaredNorm()) * (1 + X[0] * X[0])); }},
      {"anisotropic",
       [](const SQ& X) {
         return cplx(std::exp(-(X[0] * X[0] + 2 * X[1] * X[1] + X[2] * X[2] + 0.5 * X[3] * X[3])));
       }},
      {"shifted",
       [](const SQ& X) {
         const Vector4<double> c(0.3, -0.2, 0.5, 0.1);
         return cplx(std::exp(-(X.x - c).squaredNorm()));
       }},
      {"modulated", [](const SQ& X) { return std::exp(-X.x.squaredNorm()) * std::polar(1.0, X[2]); }},
  };
  int i = 0;
  for (const auto& [name, psi] : gaussians) {
    const auto res = delta_cone_apply(psi);
    const double a = std::abs(res.surface - res.volume);
    sink.record("kernels.delta_cone.gaussian" + std::to_string(i++), "delta-cone-functional",
                {{"psi", name}, {"volume_error_estimate", res.volume_error}}, cjson(res.volume), cjson(res.surface), a,
                a / std::abs(res.surface), 1e-5, "rel");
  }
  const auto odd = delta_cone_apply([](const SQ& X) { return cplx(X[0] * std::exp(-X.x.squaredNorm())); });
  sink.record("kernels.delta_cone.odd", "delta-cone-functional", {{"psi", "x1 exp(-|X|^2)"}}, cjson(odd.volume),
              cjson(odd.surface), std::max(std::abs(odd.volume), std::abs(odd.surface)), 0.0, 1e-8, "abs");
  // Supported in 1 < N < 3, away from C.
  const auto away = delta_cone_apply([](const SQ& X) {
    const double n = norm(X) - 2.0;
    if (std::abs(n) >= 1.0) return cplx(0.0);
    return cplx(std::exp(-1.0 / (1.0 - n * n)) * std::exp(-X.x.squaredNorm()));
  });
  sink.record("kernels.delta_cone.off_cone", "delta-cone-functional", {{"psi", "bump in N on (1, 3)"}},
              cjson(away.volume), cjson(away.surface), std::max(std::abs(away.volume), std::abs(away.surface)), 0.0,
              1e-8, "abs");
}

// ---------------------------------------------------------------------------

struct FourierSample {
  double R;
  DualVector<double> xi;
  double q;
};

FourierSample random_fourier_sample(Sampler& s, bool timelike) {
  FourierSample out;
  out.R = s.log_uniform(0.5, 2.0);
  const double mag = s.log_uniform(0.25, 16.0);
  out.q = timelike ? mag : -mag;
  // The smaller radius is uniform on [0, 2], the other one fixes <xi, xi>.
  const double small = s.uniform(0.0, 2.0);
  const double large = std::sqrt(small * small + mag);
  const double a = timelike ? large : small, b = timelike ? small : large;
  const double t1 = s.uniform(0, 2 * kPi), t2 = s.uniform(0, 2 * kPi);
  out.xi = DualVector<double>(a * std::cos(t1), a * std::sin(t1), b * std::cos(t2), b * std::sin(t2));
  out.q = pair(out.xi, out.xi);
  return out;
}

}  // namespace

std::vector<CheckRecord> bessel_suite(const SuiteConfig& cfg) {
  CheckSink sink(cfg, Suite::bessel);
  bessel_krel(sink);
  bessel_derivatives(sink);
  bessel_oracles(sink);
  bessel_branches(sink);
  gamma_checks(sink);
  return sink.take();
}

std::vector<CheckRecord> kernels_suite(const SuiteConfig& cfg) {
  CheckSink sink(cfg, Suite::kernels);
  geometry_checks(sink);
  kernel_values(sink);
  delta_cone_checks(sink);
  return sink.take();
}

std::vector<CheckRecord> fourier_suite(const SuiteConfig& cfg) {
  CheckSink sink(cfg, Suite::fourier);
  QuadratureSpec spec;
  spec.workers = cfg.workers;
  const char* anchor = "fourier-transform-closed-forms";
  // Fixed closed-form values.
  sink.compare("fourier.table.timelike", anchor, {{"R", 1}, {"q", -4}, {"sign_R2", -1}, {"sign_eps", 1}},
               ft_closed_form(1, -4, -1, 1), cplx(-0.5 * bessel_k0(2.0)), 1e-15);
  sink.compare("fourier.table.conjugate_branch", anchor, {{"R", 2}, {"q", 1}, {"sign_R2", -1}, {"sign_eps", -1}},
               ft_closed_form(2, 1, -1, -1), cplx(kPi / 4 * bessel_y0(2.0), -kPi / 4 * bessel_j0(2.0)), 1e-15);

  const int m = sink.samples(50);
  for (int i = 0; i < m; ++i) {
    const auto smp = random_fourier_sample(sink.sampler(), i % 2 == 0);
    const Json params = {{"R", smp.R}, {"xi", Json{smp.xi[0], smp.xi[1], smp.xi[2], smp.xi[3]}}, {"q", smp.q}};
    cplx values[2][2];
    for (int b = 0; b < 4; ++b) {
      const int sr = b < 2 ? -1 : 1, se = b % 2 == 0 ? 1 : -1;
      const auto res = ft_regularized(smp.R, smp.xi, sr, se, spec);
      if (!res.converged) throw ConvergenceError("fourier suite: extrapolation did not converge");
      values[b / 2][b % 2] = res.value;
      const cplx ref = ft_closed_form(smp.R, smp.q, sr, se);
      const double bound = std::max(1e-4 * std::abs(ref), 1e-5);
      Json p = params;
      p["sign_R2"] = sr;
      p["sign_eps"] = se;
      p["bound"] = "max(1e-4 |value|, 1e-5)";
      const double a = std::abs(res.value - ref);
      sink.record("fourier.closed_form.s" + idx(i) + ".b" + std::to_string(b), anchor, p, cjson(res.value), cjson(ref),
                  a, a / std::abs(ref), bound, "abs");
      // Real branches.
      if (ref.imag() == 0.0) {
        sink.record("fourier.spacelike_real.s" + idx(i) + ".b" + std::to_string(b), "fourier-spacelike-real", p,
                    res.value.imag(), 0.0, std::abs(res.value.imag()), INFINITY, 1e-6, "abs");
      }
    }
    for (int sr = 0; sr < 2; ++sr) {
      const cplx a = values[sr][0], b = std::conj(values[sr][1]);
      Json p = params;
      p["sign_R2"] = sr == 0 ? -1 : 1;
      const double e = std::abs(a - b);
      sink.record("fourier.conjugation.s" + idx(i) + ".r" + std::to_string(sr), "fourier-transform-conjugation", p,
                  cjson(a), cjson(b), e, e / std::abs(b), 1e-7 * std::max(1.0, std::abs(b)), "abs");
    }
  }
  return sink.take();
}

std::vector<CheckRecord> corollary_suite(const SuiteConfig& cfg) {
  CheckSink sink(cfg, Suite::corollary);
  QuadratureSpec spec;
  spec.workers = cfg.workers;
  auto& s = sink.sampler();
  const int m = sink.samples(20);
  for (int i = 0; i < m; ++i) {
    // Alternate the sign of <xi, xi'> so both branches are exercised.
    const bool positive = i % 2 == 0;
    ConePoint a, b;
    double p;
    do {
      a = random_cone_point(s, 0.3, 2.0);
      b = random_cone_point(s, 0.3, 2.0);
      p = cone_pair(a, b);
    } while ((p > 0) != positive || std::abs(p) < 0.05 * a.r * b.r);
    const double R = s.log_uniform(0.5, 2.0);
    const auto v = corollary_kernels(R, a, b, spec);
    const Json params = {{"R", R}, {"xi", point_json(a)}, {"xi2", point_json(b)}, {"pairing", p}};
    const std::string id = "corollary.p" + idx(i);
    if (positive) {
      sink.record(id + ".antisymmetric", "corollary-kernel-combinations", params, cjson(v.antisymmetric), cjson(0.0),
                  std::abs(v.antisymmetric), INFINITY, 1e-6, "abs");
    } else {
      sink.compare(id + ".antisymmetric", "corollary-kernel-combinations", params, v.antisymmetric,
                   cplx(0.0, kPi / 2 * bessel_j0(R * std::sqrt(-2 * p))), 1e-4);
    }
    Json ps = params;
    ps["R"] = 2.0;
    sink.compare(id + ".symmetric", "corollary-kernel-combinations", ps, v.symmetric, cplx(kPi / 2 * psi0(-p)), 1e-4);
  }
  return sink.take();
}

std::vector<CheckRecord> lemma_suite(const SuiteConfig& cfg) {
  CheckSink sink(cfg, Suite::lemma);
  auto& s = sink.sampler();
  const int m = sink.samples(10);
  for (int i = 0; i < m; ++i) {
    ConePoint a, b;
    double ratio, p;
    do {
      a = random_cone_point(s, 0.3, 2.0);
      b = random_cone_point(s, 0.3, 2.0);
      const auto d = cone_embed(a) - cone_embed(b);
      const double r1 = std::hypot(d[0], d[1]), r2 = std::hypot(d[2], d[3]);
      ratio = std::abs(r1 - r2) / std::max(r1, r2);
      p = cone_pair(a, b);
    } while (ratio <= 0.2 || std::abs(p) < 0.05);
    const double R = s.log_uniform(0.5, 2.0);
    const auto v = lemma_kernel_integrals(R, a, b);
    for (int k = 0; k < 4; ++k) {
      const Json params = {{"R", R}, {"xi", point_json(a)}, {"xi2", point_json(b)}, {"pairing", p},
                           {"r1", v.r1}, {"r2", v.r2}, {"identity", k + 1}};
      const std::string id = "lemma.identity.p" + idx(i) + ".i" + std::to_string(k + 1);
      if (v.closed[k] == 0.0)
        sink.compare(id, "lemma-oscillatory-integrals", params, v.integral[k], 0.0, 1e-6, "abs");
      else
        sink.compare(id, "lemma-oscillatory-integrals", params, v.integral[k], v.closed[k], 1e-3);
    }
  }
  // r2 = 0: the second identity is the integral representation of Y0.
  const double a = 1.7;
  const auto y = quad::hyperbolic_oscillatory(0.0, a, quad::Trig::cos, {1e-12, 1e-11, 4000}, 40.0);
  sink.compare("lemma.r2_zero", "lemma-oscillatory-integrals", {{"R r1", a}}, -y.value / kPi, bessel_y0(a),
               1e-8);
  return sink.take();
}

std::vector<CheckRecord> run_single(Suite s, const SuiteConfig& cfg) {
  switch (s) {
    case Suite::bessel: return bessel_suite(cfg);
    case Suite::kernels: return kernels_suite(cfg);
    case Suite::fourier: return fourier_suite(cfg);
    case Suite::corollary: return corollary_suite(cfg);
    case Suite::lemma: return lemma_suite(cfg);
    case Suite::operators: return operators_suite(cfg);
    case Suite::mellin_ratio: return mellin_ratio_suite(cfg);
    case Suite::ktypes: return ktypes_suite(cfg);
    case Suite::all: break;
  }
  throw std::logic_error("run_single: composite suite");
}

}  // namespace conekit::report::detail
