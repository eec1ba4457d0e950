// ktypes suite: rewrite rules against the ambient oracle, exact algebraic
// identities, orbit closures and the embedding dictionary.
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "conekit/embedding.hpp"
#include "conekit/ktype.hpp"
#include "conekit/quadrature.hpp"
#include "suite_detail.hpp"

namespace conekit::report::detail {

using namespace conekit::ktype;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

using KB = KBasisElement;
using GR = GaussianRational;

std::vector<KB> rewrite_elements() {
  std::vector<KB> out;
  for (int l = 0; l <= 4; ++l)
    for (int k = 0; k <= 4; ++k)
      for (int n = -2; n <= std::min(k, l); ++n)
        for (int s1 : {1, -1})
          for (int s2 : {1, -1}) out.push_back({n, l, k, s1, s2});
  return out;
}

// Orbit dimensions for n in [-2, min(l, k)], listed from n = -2 upward;
// symmetric in (l, k).
int golden_orbit_dimension(int n, int l, int k) {
  static const std::map<std::pair<int, int>, std::vector<int>> table = {
      {{0, 0}, {35, 10, 1}},
      {{0, 1}, {83, 34, 9}},
      {{0, 2}, {155, 74, 25}},
      {{0, 3}, {251, 130, 49}},
      {{0, 4}, {371, 202, 81}},
      {{1, 1}, {164, 83, 34, 9}},
      {{1, 2}, {276, 155, 74, 25}},
      {{1, 3}, {420, 251, 130, 49}},
      {{1, 4}, {596, 371, 202, 81}},
      {{2, 2}, {445, 276, 155, 74, 25}},
      {{2, 3}, {645, 420, 251, 130, 49}},
      {{2, 4}, {885, 596, 371, 202, 81}},
      {{3, 3}, {934, 645, 420, 251, 130, 49}},
      {{3, 4}, {1246, 885, 596, 371, 202, 81}},
  };
  const auto it = table.find({std::min(l, k), std::max(l, k)});
  if (it == table.end() || n < -2 || n + 2 >= int(it->second.size())) return -1;
  return it->second[n + 2];
}

ConePoint random_point(Sampler& s) {
  return {s.uniform(0.2, 3.0), s.uniform(0.0, 2 * kPi), s.uniform(0.0, 2 * kPi)};
}

Vector4<double> ambient(const ConePoint& p) { return cone_embed(p).xi; }

struct RuleCheck {
  std::string id;
  std::string anchor;
  std::function<KVector(const KVector&)> symbolic;
  std::function<cplx(const KB&, const Jet&, const Vector4<double>&)> oracle;
};

std::vector<RuleCheck> rule_checks() {
  std::vector<RuleCheck> out;
  for (int j = 1; j <= 4; ++j) {
    out.push_back({"mult_xi" + std::to_string(j), "k-vector-multiplication",
                   [j](const KVector& v) { return apply_mult_xi(j, v); },
                   [j](const KB&, const Jet& F, const Vector4<double>& x) { return x[j - 1] * F.v; }});
  }
  for (int j = 1; j <= 4; ++j) {
    out.push_back({"P" + std::to_string(j), "k-vector-P-operators", [j](const KVector& v) { return apply_P(j, v); },
                   [j](const KB&, const Jet& F, const Vector4<double>& x) { return ambient_P(j, F, x); }});
  }
  for (int index : {1, 2}) {
    for (int sign : {1, -1}) {
      const int a = index == 1 ? 1 : 3, b = a + 1;
      out.push_back({"raise_lower" + std::to_string(index) + (sign > 0 ? "plus" : "minus"), "k-vector-raise-lower",
                     [index, sign](const KVector& v) { return apply_raise_lower(index, sign, v); },
                     [a, b, sign](const KB&, const Jet& F, const Vector4<double>& x) {
                       const cplx si(0.0, sign);
                       return 2.0 * (x[a - 1] + si * x[b - 1]) * F.v +
                              0.5 * (ambient_P(a, F, x) + si * ambient_P(b, F, x));
                     }});
    }
  }
  out.push_back({"deg", "degree-operator", [](const KVector& v) { return apply_deg(v); },
                 [](const KB&, const Jet& F, const Vector4<double>& x) { return ambient_deg(F, x); }});
  out.push_back({"box22", "box-bipolar", [](const KVector& v) { return apply_box22(v); },
                 [](const KB&, const Jet& F, const Vector4<double>&) { return F.box22(); }});
  out.push_back({"X12", "compact-rotations", [](const KVector& v) { return apply_X(1, 2, v); },
                 [](const KB&, const Jet& F, const Vector4<double>& x) { return ambient_X(1, 2, F, x); }});
  out.push_back({"X34", "compact-rotations", [](const KVector& v) { return apply_X(3, 4, v); },
                 [](const KB&, const Jet& F, const Vector4<double>& x) { return ambient_X(3, 4, F, x); }});
  return out;
}

// Relative to the larger of the expected value and the input value, so that
// annihilated elements are measured on the scale of the input.
double scaled_error(cplx got, cplx want, cplx input) {
  return std::abs(got - want) / std::max({std::abs(want), std::abs(input), 1e-300});
}

void rewrite_fidelity(CheckSink& sink, const std::vector<KB>& elements) {
  const int points = sink.samples(20);
  for (const auto& rule : rule_checks()) {
    Worst w;
    int evaluated = 0;
    std::string failure;
    for (const auto& b : elements) {
      KVector out;
      try {
        out = rule.symbolic(KVector(b));
      } catch (const OutsideRewriteTable& e) {
        failure = b.str() + ": " + e.what();
        w.update(INFINITY, b.str(), "outside rewrite table", nullptr, INFINITY, INFINITY);
        continue;
      }
      for (int i = 0; i < points; ++i) {
        const ConePoint p = random_point(sink.sampler());
        const auto x = ambient(p);
        const Jet F = ambient_jet(b, x);
        const cplx want = rule.oracle(b, F, x), got = out.evaluate(p);
        const double e = scaled_error(got, want, F.v);
        w.update(e, Json{{"element", b.str()}, {"point", Json{p.r, p.theta1, p.theta2}}}, cjson(got), cjson(want),
                 std::abs(got - want), e);
        ++evaluated;
      }
    }
    Json params = {{"elements", elements.size()}, {"points_per_element", points}, {"evaluations", evaluated},
                   {"worst", w.where}, {"normalized_by", "max(|expected|, |input|)"}};
    if (!failure.empty()) params["failure"] = failure;
    sink.record("ktypes.rewrite." + rule.id, rule.anchor, std::move(params), w.computed, w.reference, w.abs_err,
                w.rel_err, 1e-7, "rel");
  }
}

void exact_identities(CheckSink& sink, const std::vector<KB>& elements) {
  // Closed raising/lowering forms against the composition 2 xi + P / 2.
  for (int index : {1, 2}) {
    for (int sign : {1, -1}) {
      int bad = 0;
      std::string first;
      for (const auto& b : elements) {
        const bool same = apply_raise_lower(index, sign, KVector(b)) == apply_raise_lower_composed(index, sign, KVector(b));
        if (!same && bad++ == 0) first = b.str();
      }
      sink.exact("ktypes.composition.index" + std::to_string(index) + (sign > 0 ? "plus" : "minus"),
                 "k-vector-composition", {{"elements", elements.size()}, {"first_mismatch", first}}, bad == 0, bad, 0);
    }
  }
  // Highest-weight annihilation: coefficient 2(k - n) at n = k, 2(l - n) at n = l.
  {
    int bad = 0, tried = 0;
    for (int l = 0; l <= 4; ++l)
      for (int k = 0; k <= 4; ++k)
        for (int s1 : {1, -1})
          for (int s2 : {1, -1}) {
            ++tried;
            if (!apply_raise_lower(1, s1, KVector(KB{k, l, k, s1, s2})).is_zero()) ++bad;
            if (!apply_raise_lower(2, s2, KVector(KB{l, l, k, s1, s2})).is_zero()) ++bad;
          }
    sink.exact("ktypes.highest_weight", "highest-weight-annihilation", {{"cases", 2 * tried}}, bad == 0, bad, 0);
  }
  // Raising/lowering displays, l >= 1.
  {
    int bad = 0;
    for (const auto& b : elements) {
      if (b.l < 1) continue;
      const int n = b.n, l = b.l, k = b.k;
      KVector same(KB{n + 1, l + 1, k, b.s1, b.s2}, GR(2L * (k - n)));
      KVector opposite;
      opposite.add(KB{n, l - 1, k, b.s1, b.s2}, GR(2L * (n - l) * (l + k - n)));
      opposite.add(KB{n - 1, l - 1, k, b.s1, b.s2}, GR(2L * (2 * l + k - n)));
      if (!(apply_raise_lower(1, b.s1, KVector(b)) == same)) ++bad;
      if (!(apply_raise_lower(1, -b.s1, KVector(b)) == opposite)) ++bad;
    }
    sink.exact("ktypes.raise_lower_displays", "k-vector-raise-lower", {{"l", ">= 1"}}, bad == 0, bad, 0);
  }
  // l = 0: the downshift goes through exact division by r^2.
  {
    int bad = 0, outside = 0;
    for (const auto& b : elements) {
      if (b.l != 0) continue;
      try {
        const KVector v = apply_raise_lower(1, -b.s1, KVector(b));
        const KVector want(KB{b.n + 1, 1, b.k, -b.s1, b.s2}, GR(2L * (b.k - b.n)));
        if (!(v == want)) ++bad;
      } catch (const OutsideRewriteTable&) {
        ++outside;
      }
    }
    sink.exact("ktypes.l0_division", "l0-division", {{"outside_rewrite_table", outside}}, bad + outside == 0, bad + outside, 0);
  }
}

// The r^2-symbolic mode reproduces the middle line of the P_1/P_2 displays;
// reducing it gives the next two lines.
void symbolic_lines(CheckSink& sink, const std::vector<KB>& elements) {
  int bad_mid = 0, bad_third = 0, bad_final = 0, tried = 0;
  for (const auto& b : elements) {
    if (b.l < 1) continue;
    const int n = b.n, l = b.l, k = b.k, s1 = b.s1, s2 = b.s2;
    auto e = [&](int nn, int ll, int rsq = 0) { return KB{nn, ll, k, s1, s2, rsq}; };
    for (int j : {1, 2}) {
      ++tried;
      // c_up multiplies the (l+1)-terms, c_down the (l-1)-terms.
      const GR c_up = j == 1 ? GR(2) : GR(0, -2L * s1);
      const GR c_down = j == 1 ? GR(2) : GR(0, 2L * s1);
      // 4 xi_j B = c_up (U + -r^2 [l-1]) B.
      const GR ud = j == 1 ? c_up : -c_up;
      KVector middle;
      middle.add(e(n + 1, l + 1), c_up * GR(k - n));
      middle.add(e(n, l + 1), -c_up);
      middle.add(e(n + 1, l - 1, 1), ud * GR(k - n));
      middle.add(e(n, l - 1, 1), -ud);
      // -2l ((l+k) Kt_n - 2 r^2 Kt_{n+1}), with -+2li for P_2.
      const GR cl = j == 1 ? GR(-2L * l) : GR(0, -2L * l * s1);
      middle.add(e(n, l - 1), cl * GR(l + k));
      middle.add(e(n + 1, l - 1, 1), cl * GR(-2));
      KVector third;
      third.add(e(n + 1, l + 1), c_up * GR(k - n));
      third.add(e(n, l + 1), -c_up);
      third.add(e(n, l - 1), c_down * GR(n * (k - n)));
      third.add(e(n - 1, l - 1), c_down * GR(k - 2 * n + 1));
      third.add(e(n - 2, l - 1), -c_down);
      third.add(e(n, l - 1), c_down * GR(l * (2 * n - l - k)));
      third.add(e(n - 1, l - 1), c_down * GR(2 * l));
      KVector final_line;
      final_line.add(e(n + 1, l + 1), c_up * GR(k - n));
      final_line.add(e(n, l + 1), -c_up);
      final_line.add(e(n, l - 1), c_down * GR((n - l) * (l + k - n)));
      final_line.add(e(n - 1, l - 1), c_down * GR(2 * l + k - 2 * n + 1));
      final_line.add(e(n - 2, l - 1), -c_down);
      const KVector sym = apply_P(j, KVector(b), RewriteOptions{false});
      if (!(sym == middle)) ++bad_mid;
      if (!(reduce(middle) == third)) ++bad_third;
      if (!(third == final_line) || !(apply_P(j, KVector(b)) == final_line)) ++bad_final;
      (void)s2;
    }
  }
  sink.exact("ktypes.symbolic_r2.middle_line", "symbolic-r2-mode", {{"cases", tried}}, bad_mid == 0, bad_mid, 0);
  sink.exact("ktypes.symbolic_r2.reduced_line", "symbolic-r2-mode", {{"cases", tried}}, bad_third == 0, bad_third, 0);
  sink.exact("ktypes.symbolic_r2.final_line", "symbolic-r2-mode", {{"cases", tried}}, bad_final == 0, bad_final, 0);

  // Multiplication displays.
  int bad_mult = 0;
  for (const auto& b : elements) {
    if (b.l < 1 || b.s1 != 1) continue;
    KVector rhs;
    rhs.add(KB{b.n, b.l + 1, b.k, 1, b.s2}, 1);
    rhs.add(KB{b.n - 1, b.l - 1, b.k, 1, b.s2}, GR(b.n - 1));
    rhs.add(KB{b.n - 2, b.l - 1, b.k, 1, b.s2}, 1);
    KVector rhs2;
    rhs2.add(KB{b.n, b.l + 1, b.k, 1, b.s2}, 1);
    rhs2.add(KB{b.n - 1, b.l - 1, b.k, 1, b.s2}, GR(1 - b.n));
    rhs2.add(KB{b.n - 2, b.l - 1, b.k, 1, b.s2}, -1);
    if (!(apply_mult_xi(1, KVector(b)).scaled(2) == rhs)) ++bad_mult;
    if (!(apply_mult_xi(2, KVector(b)).scaled(GR(0, 2)) == rhs2)) ++bad_mult;
  }
  sink.exact("ktypes.multiplication_displays", "k-vector-multiplication", {{"s1", 1}, {"l", ">= 1"}}, bad_mult == 0, bad_mult, 0);
  sink.exact("ktypes.X12_eigenvalue", "compact-rotations", {{"element", "[1,3,2,+,-]"}},
             apply_X(1, 2, KVector(KB{1, 3, 2, 1, -1})) == KVector(KB{1, 3, 2, 1, -1}, GR(0, 3)), "i l", "i l");
}

void linearity(CheckSink& sink, const std::vector<KB>& elements) {
  auto& s = sink.sampler();
  const int m = sink.samples(20);
  int bad = 0;
  const auto rules = rule_checks();
  for (int t = 0; t < m; ++t) {
    std::vector<std::pair<KB, GR>> parts;
    for (int i = 0; i < 3; ++i) {
      const KB b = elements[std::size_t(s.uniform() * elements.size())];
      parts.push_back({b, GR(Rational(int(s.uniform(-5, 5))), Rational(int(s.uniform(-5, 5))))});
    }
    KVector v;
    for (const auto& [b, c] : parts) v.add(b, c);
    for (const auto& rule : rules) {
      KVector sum;
      for (const auto& [b, c] : parts) sum.add(rule.symbolic(KVector(b)), c);
      if (!(rule.symbolic(v) == sum)) ++bad;
    }
  }
  sink.exact("ktypes.linearity", "linearity", {{"samples", m}, {"operators", rules.size()}}, bad == 0, bad, 0);
}

void ambient_checks(CheckSink& sink) {
  auto& s = sink.sampler();
  const std::vector<KB> subset = {{0, 1, 1, 1, 1}, {-1, 2, 1, 1, -1}, {1, 2, 3, -1, 1}, {-2, 0, 2, 1, 1}, {2, 3, 2, -1, -1}};
  // [X12, X13] = -X23 at cone points.
  {
    Worst w;
    for (const auto& b : subset)
      for (int i = 0; i < 20; ++i) {
        const ConePoint p = random_point(s);
        const auto x = ambient(p);
        const Jet F = ambient_jet(b, x);
        const cplx lhs = ambient_XX(1, 2, 1, 3, F, x) - ambient_XX(1, 3, 1, 2, F, x);
        const cplx rhs = -ambient_X(2, 3, F, x);
        const double e = scaled_error(lhs, rhs, F.v);
        w.update(e, b.str(), cjson(lhs), cjson(rhs), std::abs(lhs - rhs), e);
      }
    sink.record("ktypes.bracket", "lie-bracket", {{"bracket", "[X12, X13] = -X23"}, {"worst", w.where}}, w.computed,
                w.reference, w.abs_err, w.rel_err, 1e-6, "rel");
  }
  // r1- and r2-extensions give the same P_j on the cone.
  {
    Worst w;
    for (const auto& b : subset)
      for (int i = 0; i < 20; ++i) {
        const ConePoint p = random_point(s);
        const auto x = ambient(p);
        const Jet F2 = ambient_jet(b, x, Extension::r2), F1 = ambient_jet(b, x, Extension::r1);
        for (int j = 1; j <= 4; ++j) {
          const cplx a = ambient_P(j, F1, x), c = ambient_P(j, F2, x);
          const double e = scaled_error(a, c, F2.v);
          w.update(e, Json{{"element", b.str()}, {"j", j}}, cjson(a), cjson(c), std::abs(a - c), e);
        }
      }
    sink.record("ktypes.extension_independence", "ambient-extension-independence", {{"worst", w.where}}, w.computed,
                w.reference, w.abs_err, w.rel_err, 1e-7, "rel");
  }
  // Bipolar Box against fourth-order differences at ambient points.
  {
    Worst w, wj;
    for (const auto& b : subset)
      for (int i = 0; i < 5; ++i) {
        const double r1 = s.uniform(0.4, 2.0), r2 = s.uniform(0.4, 2.0), t1 = s.uniform(0, 2 * kPi),
                     t2 = s.uniform(0, 2 * kPi);
        const Vector4<double> x(r1 * std::cos(t1), r1 * std::sin(t1), r2 * std::cos(t2), r2 * std::sin(t2));
        const double h = 1e-3;
        auto f = [&](const Vector4<double>& y) { return ambient_jet(b, y).v; };
        cplx fd = 0.0;
        for (int c = 0; c < 4; ++c) {
          Vector4<double> e = Vector4<double>::Zero();
          e[c] = h;
          const cplx d2 = (-f(x + 2 * e) + 16.0 * f(x + e) - 30.0 * f(x) + 16.0 * f(x - e) - f(x - 2 * e)) / (12 * h * h);
          fd += double(kEpsilon[c]) * d2;
        }
        const cplx bip = bipolar_box22(b, x), jet = ambient_jet(b, x).box22();
        const cplx v = f(x);
        const double e = scaled_error(bip, fd, v);
        w.update(e, Json{{"element", b.str()}, {"x", Json{x[0], x[1], x[2], x[3]}}}, cjson(bip), cjson(fd),
                 std::abs(bip - fd), e);
        const double ej = scaled_error(bip, jet, v);
        wj.update(ej, b.str(), cjson(bip), cjson(jet), std::abs(bip - jet), ej);
      }
    sink.record("ktypes.bipolar_box.finite_difference", "box-bipolar", {{"h", 1e-3}, {"worst", w.where}}, w.computed,
                w.reference, w.abs_err, w.rel_err, 1e-6, "rel");
    sink.record("ktypes.bipolar_box.jet", "box-bipolar", {{"worst", wj.where}}, wj.computed, wj.reference, wj.abs_err,
                wj.rel_err, 1e-10, "rel");
  }
  // Skew-symmetry of X12 under (r/2) dr dtheta1 dtheta2 on r <= 6.
  {
    const KB u{0, 1, 1, 1, 1}, v{-1, 1, 1, 1, 1};
    const auto& gl = quad::gauss_legendre(64);
    const int M = 16;
    cplx xu_v = 0.0, u_xv = 0.0;
    for (int a = 0; a < 64; ++a) {
      for (int piece = 0; piece < 3; ++piece) {
        const double lo = piece == 0 ? 1e-6 : piece == 1 ? 0.5 : 2.0, hi = piece == 0 ? 0.5 : piece == 1 ? 2.0 : 6.0;
        const double r = lo + 0.5 * (hi - lo) * (gl.nodes[a] + 1.0);
        const double wr = 0.5 * (hi - lo) * gl.weights[a] * 0.5 * r * (2 * kPi / M) * (2 * kPi / M);
        for (int i = 0; i < M; ++i)
          for (int j = 0; j < M; ++j) {
            const auto x = ambient(ConePoint{r, 2 * kPi * i / M, 2 * kPi * j / M});
            const Jet U = ambient_jet(u, x), V = ambient_jet(v, x);
            xu_v += wr * std::conj(ambient_X(1, 2, U, x)) * V.v;
            u_xv += wr * std::conj(U.v) * ambient_X(1, 2, V, x);
          }
      }
    }
    const double e = std::abs(xu_v + u_xv);
    sink.record("ktypes.X12_skew_symmetry", "rotation-skew-symmetry",
                {{"u", u.str()}, {"v", v.str()}, {"<X12 u, v>", cjson(xu_v)}}, cjson(xu_v + u_xv), cjson(0.0), e,
                e / std::abs(xu_v), 1e-10, "rel");
  }
}

void orbit_checks(CheckSink& sink) {
  int checked = 0, mismatched = 0, unstable = 0, infinite = 0;
  Json mismatches = Json::array();
  for (int l = 0; l <= 4; ++l)
    for (int k = 0; k <= 4; ++k) {
      if (std::min(l, k) > 3) continue;
      for (int n = -2; n <= std::min(l, k); ++n)
        for (int s1 : {1, -1})
          for (int s2 : {1, -1}) {
            const KB b{n, l, k, s1, s2};
            const auto first = kfinite_certificate(b);
            const auto second = kfinite_certificate(b);
            ++checked;
            if (!first.closure_finite) ++infinite;
            if (first.dimension != second.dimension || first.closure_finite != second.closure_finite) ++unstable;
            const int golden = golden_orbit_dimension(n, l, k);
            if (first.dimension != golden) {
              ++mismatched;
              mismatches.push_back(Json{{"element", b.str()}, {"dimension", first.dimension}, {"golden", golden}});
            }
          }
    }
  sink.exact("ktypes.orbit.finite", "orbit-closure", {{"elements", checked}, {"n_range", Json{-2, "min(l,k)"}}},
             infinite == 0, infinite, 0);
  sink.exact("ktypes.orbit.stable", "orbit-closure", {{"elements", checked}, {"runs", 2}}, unstable == 0, unstable, 0);
  sink.exact("ktypes.orbit.golden", "orbit-closure", {{"elements", checked}, {"mismatches", mismatches}},
             mismatched == 0, mismatched, 0);

  const auto c023 = kfinite_certificate(KB{0, 2, 3});
  sink.exact("ktypes.kfinite.n0_l2_k3", "kfinite-certificate", {{"element", "[0,2,3,+,+]"}},
             c023.in_l2 && c023.closure_finite, Json{{"in_l2", c023.in_l2}, {"finite", c023.closure_finite}},
             Json{{"in_l2", true}, {"finite", true}});
  const auto top = kfinite_certificate(KB{2, 2, 3});
  sink.exact("ktypes.kfinite.n_min", "kfinite-certificate", {{"element", "[2,2,3,+,+]"}},
             top.in_l2 && top.closure_finite, Json{{"in_l2", top.in_l2}, {"finite", top.closure_finite}},
             Json{{"in_l2", true}, {"finite", true}});
  const auto over = kfinite_certificate(KB{3, 2, 3}, 400);
  sink.exact("ktypes.kfinite.n_above_min", "kfinite-certificate", {{"element", "[3,2,3,+,+]"}, {"max_dimension", 400}},
             !over.in_l2 && !over.closure_finite, Json{{"in_l2", over.in_l2}, {"finite", over.closure_finite}},
             Json{{"in_l2", false}, {"finite", false}});
}

void embedding_checks(CheckSink& sink) {
  auto& s = sink.sampler();
  // Polynomial test functions.
  Worst w;
  for (int t = 0; t < 20; ++t) {
    const Vector4<double> x(s.uniform(-2, 2), s.uniform(-2, 2), s.uniform(-2, 2), s.uniform(-2, 2));
    auto X = [&](int i) { return Jet::coordinate(x, i); };
    const Jet phi = X(0) * X(2) + (X(1) * X(1) * X(3)).scaled(cplx(0.5, -1.0)) + X(3).scaled(2.0) +
                    Jet::constant(cplx(0.3, 0.1)) + (X(0) * X(1) * X(2) * X(3)).scaled(-0.25);
    const auto r = x_dx_identity(phi, x);
    const double scale = std::max(1.0, r.lhs.cwiseAbs().maxCoeff());
    w.update(r.residual / scale, Json{x[0], x[1], x[2], x[3]}, r.residual, 0.0, r.residual, r.residual / scale);
  }
  sink.record("ktypes.embedding.matrix_identity", "embedding-identity", {{"samples", 20}, {"worst_x", w.where}},
              w.computed, w.reference, w.abs_err, w.rel_err, 1e-12, "rel");

  const KB b{0, 1, 2, 1, -1};
  auto f = [&](const Vector4<double>& y) { return ambient_jet(b, y); };
  for (const auto& e : embedding_dictionary()) {
    Worst we;
    for (int t = 0; t < 10; ++t) {
      const Vector4<double> xi(s.uniform(-1.5, 1.5), s.uniform(-1.5, 1.5), s.uniform(-1.5, 1.5), s.uniform(-1.5, 1.5));
      if (std::hypot(xi[2], xi[3]) < 0.2) continue;
      const auto c = embedding_spot_check(e, f, xi);
      const double err = std::abs(c.predicted - c.table) / std::max(std::abs(c.table), std::abs(f(xi).v));
      we.update(err, Json{xi[0], xi[1], xi[2], xi[3]}, cjson(c.predicted), cjson(c.table),
                std::abs(c.predicted - c.table), err);
    }
    sink.record(std::string("ktypes.embedding.dictionary.") + e.block + "." + e.basis, "embedding-dictionary",
                {{"block", std::string(1, e.block)}, {"basis", e.basis}, {"j", e.j}, {"function", b.str()},
                 {"worst_xi", we.where}},
                we.computed, we.reference, we.abs_err, we.rel_err, 1e-8, "rel");
  }
}

}  // namespace

std::vector<CheckRecord> ktypes_suite(const SuiteConfig& cfg) {
  CheckSink sink(cfg, Suite::ktypes);
  const auto elements = rewrite_elements();
  rewrite_fidelity(sink, elements);
  exact_identities(sink, elements);
  symbolic_lines(sink, elements);
  linearity(sink, elements);
  ambient_checks(sink);
  embedding_checks(sink);
  orbit_checks(sink);
  return sink.take();
}

}  // namespace conekit::report::detail
