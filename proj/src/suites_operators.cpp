// operators and mellin_ratio suites.
#include <cmath>
#include <cstdio>
#include <numbers>

#include "conekit/cone_operators.hpp"
#include "conekit/mellin.hpp"
#include "conekit/special_functions.hpp"
#include "suite_detail.hpp"

namespace conekit::report::detail {

namespace {

// Compact decimal form for check ids: 0.3 -> "0.3", 2 -> "2".
std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

QuadratureSpec loose_spec(unsigned workers, double rel = 1e-6, double abs = 1e-9) {
  auto s = operator_spec();
  s.rel_tol = rel;
  s.abs_tol = abs;
  s.workers = workers;
  return s;
}

ConePoint on_ray(const ConePoint& base, double s) { return {s * base.r, base.theta1, base.theta2}; }

// e^{-r^p} e^{i (m1 t1 + m2 t2)} on the whole torus.
ConeFunction angular_mode(int m1, int m2, double p) {
  ConeFunction f;
  f.eval = [m1, m2, p](double r, double t1, double t2) { return std::exp(-std::pow(r, p)) * std::polar(1.0, m1 * t1 + m2 * t2); };
  f.decay = {DecayKind::exponential, 1.0, 0.0, 1.0, p};
  return f;
}

// Fourier coefficients of the operator output over an M x M angular grid at
// radius r, for the alias-free modes m in [-(M-1)/2 .. M/2].
template <typename Op>
std::vector<std::pair<std::pair<int, int>, cplx>> mode_projection(Op&& op, int M, double r) {
  std::vector<cplx> values;
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) values.push_back(op(ConePoint{r, 2 * kPi * i / M, 2 * kPi * j / M}));
  std::vector<std::pair<std::pair<int, int>, cplx>> out;
  const int lo = -(M - 1) / 2, hi = M / 2;
  for (int a = lo; a <= hi; ++a)
    for (int b = lo; b <= hi; ++b) {
      cplx acc = 0.0;
      for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j)
          acc += values[i * M + j] * std::polar(1.0, -2 * kPi * (a * i + b * j) / M);
      out.push_back({{a, b}, acc / double(M * M)});
    }
  return out;
}

void block_diagonality(CheckSink& sink, const std::string& name, const std::vector<std::pair<int, int>>& modes, int M,
                       const std::function<cplx(const ConeFunction&, const ConePoint&)>& op) {
  for (auto [m1, m2] : modes) {
    const auto f = angular_mode(m1, m2, 1.0);
    const auto proj = mode_projection([&](const ConePoint& p) { return op(f, p); }, M, 1.0);
    double cross = 0.0;
    cplx diag = 0.0;
    for (const auto& [mode, v] : proj) {
      if (mode == std::make_pair(m1, m2))
        diag = v;
      else
        cross = std::max(cross, std::abs(v));
    }
    sink.record("operators.block_diagonal." + name + ".m" + std::to_string(m1) + "_" + std::to_string(m2),
                "angular-mode-block-diagonal", {{"mode", Json{m1, m2}}, {"grid", M}, {"r", 1.0}, {"diagonal", cjson(diag)}},
                cross, 0.0, cross, INFINITY, 1e-6, "abs");
  }
}

}  // namespace

std::vector<CheckRecord> operators_suite(const SuiteConfig& cfg) {
  CheckSink sink(cfg, Suite::operators);
  const ConePoint base{1.0, 0.3, 1.1};
  const auto spec = loose_spec(cfg.workers);

  // Reduction to the closed theta-chains on the ray s xi.
  for (int eps : {0, 1}) {
    const auto tf = make_f_xi_eps(base, eps, RadialProfile::exp_sqrt);
    const auto f = tf.as_cone_function();
    for (double s : {0.2, 0.5, 1.0, 2.0}) {
      const Json p = {{"eps", eps}, {"s", s}, {"xi", Json{base.r, base.theta1, base.theta2}}, {"profile", "exp_sqrt"}};
      sink.compare("operators.fc_chain.e" + std::to_string(eps) + ".s" + idx(int(s * 10), 2), "fc-theta-chain", p,
                   op_FC(f, on_ray(base, s), spec).value, cplx(tf.fc_ray_chain(s)), 1e-3);
      for (double R : {1.0, 2.0}) {
        Json pr = p;
        pr["R"] = R;
        // The chain vanishes at R^2 s = 1, so the error is taken relative to
        // the larger of |chain| and 1% of its size on the grid.
        double scale = 0.0;
        for (double t : {0.2, 0.5, 1.0, 2.0}) scale = std::max(scale, std::abs(tf.plhat_ray_chain(R, t)));
        const cplx got = op_PlHatPrime(f, R, on_ray(base, s), spec).value, want = tf.plhat_ray_chain(R, s);
        const double a = std::abs(got - want);
        pr["normalized_by"] = "max(|chain|, 0.01 max_s |chain|)";
        sink.record("operators.plhat_chain.e" + std::to_string(eps) + ".s" + idx(int(s * 10), 2) + ".R" +
                        std::to_string(int(R)),
                    "plhat-theta-chain", pr, cjson(got), cjson(want), a, a / std::max(std::abs(want), 0.01 * scale),
                    1e-3, "rel");
      }
    }
    // Parity: (F_C f)(-xi) = (-1)^eps (F_C f)(xi).
    const ConePoint anti{base.r, base.theta1 + kPi, base.theta2 + kPi};
    const cplx here = op_FC(f, base, spec).value, there = op_FC(f, anti, spec).value;
    const cplx expected = eps ? -here : here;
    sink.compare("operators.fc_parity.e" + std::to_string(eps), "fc-parity", {{"eps", eps}}, there, expected, 1e-6);
    // f_{xi, eps} at the antipodal angles (theta1 + pi, theta2 + pi) is (-1)^eps f_{xi, eps}.
    double worst = 0.0;
    for (int i = 0; i < 64; ++i) {
      const double a = 0.1 * i, b = 0.37 * i;
      const cplx u = tf(ConePoint{0.8, base.theta1 + a, base.theta2 + kPi + b});
      const cplx v = tf(ConePoint{0.8, base.theta1 + kPi + a, base.theta2 + 2 * kPi + b});
      worst = std::max(worst, std::abs(v - (eps ? -u : u)));
    }
    sink.record("operators.test_function_parity.e" + std::to_string(eps), "test-function-parity", {{"eps", eps}},
                worst, 0.0, worst, INFINITY, 1e-14, "abs");
    // L^2 membership and refinement.
    const double coarse = l2_norm_squared(f, loose_spec(cfg.workers, 1e-6, 1e-10)).value;
    const double fine = l2_norm_squared(f, loose_spec(cfg.workers, 1e-9, 1e-12)).value;
    sink.compare("operators.l2_norm.e" + std::to_string(eps), "test-function-l2", {{"eps", eps}}, coarse, fine, 1e-5);
  }

  // Small s for eps = 1: the theta-integrand vanishes at s = 0, and the chain
  // goes to 0 like s log(1/s). (8/pi^2) int_0^inf h(u) du / u is the same
  // limit written as a u-integral.
  {
    auto h = [](double u) {
      if (u == 0.0) return 0.0;
      const double a = 1.0 / std::pow(1.0 + 2.0 * u, 3);
      const double b = (1.0 - 12.0 * u * u) / std::pow(1.0 + 4.0 * u * u, 3);
      return 8.0 / (kPi * kPi) * (a - b) / u;
    };
    const double limit = quad::integrate_half_line(h, 0.0, {1e-15, 1e-13, 4000}, std::array<double, 2>{0.5, 2.0}).value;
    sink.compare("operators.fc_small_s.limit_integral", "fc-small-s-limit", {{"eps", 1}}, limit, 0.0, 1e-12, "abs");
    sink.compare("operators.fc_small_s.chain", "fc-small-s-limit", {{"s", 1e-12}, {"eps", 1}}, fc_theta_chain(1e-12, 1),
                 0.0, 1e-8, "abs");
    const auto tf = make_f_xi_eps(base, 1, RadialProfile::exp_sqrt);
    sink.compare("operators.fc_small_s.operator", "fc-small-s-limit", {{"s", 0.01}, {"eps", 1}},
                 op_FC(tf.as_cone_function(), on_ray(base, 0.01), spec).value, cplx(tf.fc_ray_chain(0.01)), 1e-3);
  }

  // PlHat vanishes on functions supported in <xi, xi'> > 0.
  {
    const auto tf = make_f_xi_eps(base, 0, RadialProfile::exp_sqrt);
    auto full = tf.as_cone_function();
    ConeFunction plus;
    plus.decay = full.decay;
    plus.support = {full.support[0]};
    const auto pc = full.support[0];
    plus.eval = [full, pc](double r, double t1, double t2) {
      const double d = std::hypot(std::remainder(t1 - pc.c1, 2 * kPi), std::remainder(t2 - pc.c2, 2 * kPi));
      return d < pc.w1 ? full.eval(r, t1, t2) : cplx(0.0);
    };
    const cplx v = op_PlHatPrime(plus, 1.0, base, spec).value;
    sink.exact("operators.plhat_support", "plhat-kernel-support", {{"support", "positive bump only"}}, v == 0.0,
               cjson(v), cjson(0.0));
    // R-scaling: PlHat_R f (s xi) = PlHat_1 f (R^2 s xi).
    const auto f = tf.as_cone_function();
    sink.compare("operators.plhat_R_scaling", "plhat-R-scaling", {{"R", 2.0}, {"s", 0.5}},
                 op_PlHatPrime(f, 2.0, on_ray(base, 0.5), spec).value,
                 op_PlHatPrime(f, 1.0, on_ray(base, 2.0), spec).value, 1e-6);
  }

  // Angular-mode block structure.
  block_diagonality(sink, "plhat", {{0, 0}, {1, 0}, {0, 1}, {-1, 2}}, 4, [&](const ConeFunction& f, const ConePoint& p) {
    return op_PlHatPrime(f, 1.0, p, operator_spec()).value;
  });
  const auto fc_spec = loose_spec(cfg.workers, 1e-8, 1e-10);
  block_diagonality(sink, "fc", {{0, 0}, {1, 0}}, 3, [&](const ConeFunction& f, const ConePoint& p) {
    return op_FC(f, p, fc_spec).value;
  });

  // Conjugation and linearity.
  {
    const auto f = angular_mode(1, -1, 2.0), g = angular_mode(-1, 1, 2.0), h = angular_mode(0, 2, 2.0);
    const ConePoint xi{1.3, 0.4, 2.1};
    const cplx pf = op_PlHatPrime(f, 1.0, xi, operator_spec()).value;
    const cplx pg = op_PlHatPrime(g, 1.0, xi, operator_spec()).value;
    sink.compare("operators.conjugation.plhat", "plhat-conjugation", {{"xi", Json{xi.r, xi.theta1, xi.theta2}}}, pg,
                 -std::conj(pf), 1e-7);
    const cplx ff = op_FC(f, xi, spec).value, fg = op_FC(g, xi, spec).value;
    sink.compare("operators.conjugation.fc", "fc-conjugation", {{"xi", Json{xi.r, xi.theta1, xi.theta2}}}, fg,
                 std::conj(ff), 1e-5);
    ConeFunction sum;
    sum.eval = [f, h](double r, double t1, double t2) { return f.eval(r, t1, t2) + cplx(2.0, -1.0) * h.eval(r, t1, t2); };
    sum.decay = f.decay;
    sum.decay.C = 1.0 + std::sqrt(5.0);
    const cplx ph = op_PlHatPrime(h, 1.0, xi, operator_spec()).value;
    sink.compare("operators.linearity.plhat", "operator-linearity", {{"coefficient", cjson({2.0, -1.0})}},
                 op_PlHatPrime(sum, 1.0, xi, operator_spec()).value, pf + cplx(2.0, -1.0) * ph, 1e-7);
  }

  // F_C*: refinement, rotation equivariance and dilation.
  {
    const ConePoint xi{1.2, 0.7, 2.0};
    ConeFunction f;
    f.eval = [](double r, double t1, double t2) {
      return cplx(std::exp(-r * r) * (1.0 + 0.5 * std::cos(t1) * std::sin(2 * t2)), 0.3 * std::sin(t1 - t2));
    };
    f.decay = {DecayKind::exponential, 1.8, 0.0, 1.0, 2.0};
    ConeFunction local = f;
    local.support = {AngularPatch{AngularPatch::disc, xi.theta1, xi.theta2, 0.6, 0.6}};
    auto localized = [&](const ConeFunction& src) {
      ConeFunction out = src;
      out.support = local.support;
      const AngularPatch pc = local.support[0];
      out.eval = [src, pc](double r, double t1, double t2) {
        const double d = std::hypot(std::remainder(t1 - pc.c1, 2 * kPi), std::remainder(t2 - pc.c2, 2 * kPi));
        return d < pc.w1 ? src.eval(r, t1, t2) : cplx(0.0);
      };
      return out;
    };
    const auto lf = localized(f);
    sink.compare("operators.fcstar_refinement", "fcstar-refinement", {{"support", "disc where xi.xi' > 1.6 r r'"}},
                 op_FCstar(lf, xi, loose_spec(cfg.workers, 1e-5, 1e-8)).value,
                 op_FCstar(lf, xi, loose_spec(cfg.workers, 1e-10, 1e-13)).value, 1e-5);

    const double c = 0.9;
    ConeFunction rotated = f;
    rotated.eval = [f, c](double r, double t1, double t2) { return f.eval(r, t1 - c, t2 - c); };
    sink.compare("operators.fcstar_rotation", "rotation-equivariance", {{"shift", c}},
                 op_FCstar(rotated, ConePoint{xi.r, xi.theta1 + c, xi.theta2 + c}, spec).value,
                 op_FCstar(f, xi, spec).value, 1e-5);

    const double a = 2.0;
    ConeFunction dilated = f;
    dilated.eval = [f, a](double r, double t1, double t2) { return f.eval(a * r, t1, t2); };
    dilated.decay.a = a * a;
    sink.compare("operators.fcstar_dilation", "dilation-scaling", {{"a", a}},
                 op_FCstar(dilated, xi, spec).value,
                 op_FCstar(f, ConePoint{xi.r / a, xi.theta1, xi.theta2}, spec).value / (a * a), 1e-5);
  }
  return sink.take();
}

// ---------------------------------------------------------------------------

std::vector<CheckRecord> mellin_ratio_suite(const SuiteConfig& cfg) {
  CheckSink sink(cfg, Suite::mellin_ratio);
  QuadratureSpec spec;
  spec.workers = cfg.workers;

  // Transforms with Gamma-function values.
  {
    const double a = 1.5, rho = 0.7;
    MellinWindow w{0.0, 1.0, 2.0, std::pow(2.0 / (a * std::exp(1.0)), 2.0)};
    const cplx mu(1.0, -rho);
    sink.compare("mellin.transform.exponential", "mellin-exponential", {{"a", a}, {"rho", rho}},
                 mellin([a](double s) { return cplx(std::exp(-a * s)); }, rho, w, spec).value,
                 std::pow(a, -mu) * gamma_complex(mu), 1e-8);
    const double b = 2.0, nu = 3.0;
    MellinWindow wp{0.0, 1.0, nu, std::pow(b, -nu)};
    sink.compare("mellin.transform.power", "mellin-power-law", {{"a", b}, {"nu", nu}, {"rho", rho}},
                 mellin([b, nu](double s) { return cplx(std::pow(1.0 + b * s, -nu)); }, rho, wp, spec).value,
                 std::pow(b, -mu) * gamma_complex(mu) * gamma_complex(nu - 1.0 + I * rho) / gamma_complex(nu), 1e-8);
    MellinWindow w1{0.0, 1.0, 2.0, 4.0 / std::exp(2.0)};
    sink.compare("mellin.transform.rho_zero", "mellin-exponential", {{"rho", 0.0}},
                 mellin([](double s) { return cplx(std::exp(-s)); }, 0.0, w1, spec).value, cplx(1.0), 1e-8);
  }

  // Table integrals.
  {
    const auto g10 = damped_trig_moments(1, 0), g11 = damped_trig_moments(1, 1), g21 = damped_trig_moments(2, 1);
    sink.compare("mellin.trig_moments.a1b0.sin", "damped-trig-moments", {{"a", 1}, {"b", 0}}, g10.sin_closed, 0.0, 1e-14, "abs");
    sink.compare("mellin.trig_moments.a1b0.cos", "damped-trig-moments", {{"a", 1}, {"b", 0}}, g10.cos_closed, 2.0, 1e-14);
    sink.compare("mellin.trig_moments.a1b1.sin", "damped-trig-moments", {{"a", 1}, {"b", 1}}, g11.sin_closed, 0.5, 1e-14);
    sink.compare("mellin.trig_moments.a1b1.cos", "damped-trig-moments", {{"a", 1}, {"b", 1}}, g11.cos_closed, -0.5, 1e-14);
    sink.compare("mellin.trig_moments.a2b1.sin", "damped-trig-moments", {{"a", 2}, {"b", 1}}, g21.sin_quadrature, g21.sin_closed,
                 1e-10);
    sink.compare("mellin.trig_moments.a2b1.cos", "damped-trig-moments", {{"a", 2}, {"b", 1}}, g21.cos_quadrature, g21.cos_closed,
                 1e-10);
  }

  // Gamma chain at random rho in (0, 3].
  {
    const int m = sink.samples(10);
    for (int i = 0; i < m; ++i) {
      const double rho = 3.0 * (1.0 - sink.sampler().uniform());
      for (int eps : {0, 1}) {
        for (const auto& g : gamma_chain_identities(rho, eps)) {
          sink.compare("mellin.gamma_chain.s" + idx(i) + ".e" + std::to_string(eps) + "." + g.name, "gamma-chain",
                       {{"rho", rho}, {"eps", eps}, {"identity", g.name}}, g.lhs, g.rhs, 1e-10);
        }
      }
    }
    auto pick = [](double rho, int eps, const std::string& name) {
      for (const auto& g : gamma_chain_identities(rho, eps))
        if (g.name == name) return g;
      throw std::logic_error("missing identity " + name);
    };
    const std::tuple<double, int, const char*> examples[] = {
        {0.7, 0, "plhat-gamma-collect"}, {0.5, 0, "fc-gamma-duplication"}, {1.3, 0, "fc-trig-reduction"},
        {1.3, 1, "fc-trig-reduction"}};
    int k = 0;
    for (auto [rho, eps, name] : examples) {
      const auto g = pick(rho, eps, name);
      sink.compare("mellin.gamma_chain.example" + std::to_string(k++), "gamma-chain",
                   {{"rho", rho}, {"eps", eps}, {"identity", name}}, g.lhs, g.rhs, 1e-10);
    }
  }

  // Closed forms, per-theta transforms and their theta-independence.
  for (double rho : cfg.rho) {
    for (double R : cfg.R) {
      cplx verdicts[2] = {};
      for (int eps : cfg.parities) {
        const Json p = {{"rho", rho}, {"R", R}, {"eps", eps}};
        const std::string tag = ".rho" + num(rho) + ".R" + num(R) +
                                ".e" + std::to_string(eps);
        const auto v = verify_ratio(rho, R, eps, RatioMode::closed_form);
        verdicts[eps] = v.computed_ratio;
        sink.compare("mellin.ratio.closed" + tag, "ratio-closed-form", p, v.computed_ratio, v.reference_ratio, 1e-8);
        double spread = 0.0;
        cplx first;
        for (double theta : {0.0, 0.5, 1.5}) {
          const auto c = per_theta_mellin_closed_forms(rho, R, theta, eps);
          const auto n = per_theta_mellin_numeric(rho, R, theta, eps, spec);
          Json pt = p;
          pt["theta"] = theta;
          const std::string th = ".t" + std::to_string(int(theta * 10));
          sink.compare("mellin.per_theta.plhat" + tag + th, "per-theta-mellin", pt, n.plhat, c.plhat, 1e-6);
          sink.compare("mellin.per_theta.fc" + tag + th, "per-theta-mellin", pt, n.fc, c.fc, 1e-6);
          const cplx ratio = c.plhat / c.fc;
          if (theta == 0.0) first = ratio;
          spread = std::max(spread, std::abs(ratio - first) / std::abs(first));
        }
        sink.record("mellin.theta_independence" + tag, "ratio-theta-independence",
                    Json{{"rho", rho}, {"R", R}, {"eps", eps}, {"theta", Json{0.0, 0.5, 1.5}}}, spread, 0.0,
                    spread * std::abs(first), spread, 1e-12, "rel");
      }
      if (cfg.parities.size() == 2) {
        sink.compare("mellin.parity_product.rho" + num(rho) + ".R" +
                         num(R),
                     "ratio-parity-product", {{"rho", rho}, {"R", R}}, verdicts[0] * verdicts[1],
                     std::pow(R, cplx(-4.0, 4.0 * rho)) * std::pow(2.0, cplx(0.0, -4.0 * rho)), 1e-8);
      }
    }
  }

  // Reference value and large-rho modulus.
  sink.compare("mellin.reference_value", "ratio-closed-form", {{"rho", 1.0}, {"R", 1.0}, {"eps", 0}},
               reference_ratio(1.0, 1.0, 0), std::exp(cplx(0.0, -2.0 * std::log(2.0))) / std::tanh(kPi / 2), 1e-15);
  for (int eps : {0, 1}) {
    for (double R : {0.5, 2.0}) {
      const auto v = verify_ratio(8.0, R, eps, RatioMode::closed_form);
      sink.compare("mellin.large_rho.e" + std::to_string(eps) + ".R" + num(R),
                   "ratio-large-rho", {{"rho", 8.0}, {"R", R}, {"eps", eps}}, std::abs(v.computed_ratio),
                   1.0 / (R * R), 1e-8);
    }
  }
  for (double rho : {0.3, 1.0, 2.0}) {
    const cplx step = reference_ratio(rho, 2.0, 0) / reference_ratio(rho, 1.0, 0);
    sink.compare("mellin.ratio_exponent.rho" + num(rho), "ratio-exponent",
                 {{"rho", rho}, {"4l", cjson(ratio_exponent(rho))}}, step, std::pow(2.0, ratio_exponent(rho)),
                 1e-12);
  }

  // End to end through the operators on sampled rays.
  EndToEndOptions opts;
  opts.workers = cfg.workers;
  opts.operator_spec.workers = cfg.workers;
  MellinRatioEngine engine(opts);
  const cplx cal = engine.calibration();
  sink.compare("mellin.calibration", "ratio-calibration",
               {{"rho", opts.calibration_rho}, {"R", opts.calibration_R}, {"eps", 0}}, cal, cplx(1.0), 1e-3);
  for (double rho : cfg.rho) {
    for (double R : cfg.R) {
      for (int eps : cfg.parities) {
        const auto v = engine.verify(rho, R, eps, RatioMode::end_to_end);
        const std::string tag = ".rho" + num(rho) + ".R" + num(R) +
                                ".e" + std::to_string(eps);
        sink.compare("mellin.ratio.e2e" + tag, "ratio-end-to-end",
                     {{"rho", rho}, {"R", R}, {"eps", eps}, {"calibration", cjson(v.calibration)},
                      {"uncalibrated_rel_error", v.uncalibrated_rel_error}, {"profile", "exp_sqrt"}},
                     v.computed_ratio, v.reference_ratio, 5e-3);
      }
    }
  }
  return sink.take();
}

}  // namespace conekit::report::detail
