#include "conekit/ktype.hpp"

#include <cmath>
#include <deque>
#include <sstream>

#include "conekit/special_functions.hpp"

namespace conekit::ktype {

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  const Rational den = b.re * b.re + b.im * b.im;
  if (den == 0) throw std::domain_error("GaussianRational division by zero");
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

std::string GaussianRational::str() const {
  std::ostringstream os;
  if (im == 0) {
    os << re;
  } else if (re == 0) {
    os << im << "i";
  } else {
    os << "(" << re << (im < 0 ? "-" : "+") << (im < 0 ? Rational(-im) : im) << "i)";
  }
  return os.str();
}

KBasisElement KBasisElement::canonical() const {
  KBasisElement b = *this;
  if (b.l == 0) b.s1 = 1;
  if (b.k == 0) b.s2 = 1;
  return b;
}

cplx KBasisElement::evaluate(const ConePoint& p) const {
  const double radial = std::pow(p.r, 2 * rsq + l + k) * ktilde(n, 2.0 * p.r);
  return radial * std::polar(1.0, s1 * l * p.theta1 + s2 * k * p.theta2);
}

std::string KBasisElement::str() const {
  std::ostringstream os;
  os << "[" << n << "," << l << "," << k << "," << (s1 > 0 ? "+" : "-") << "," << (s2 > 0 ? "+" : "-");
  if (rsq != 0) os << ";r^" << 2 * rsq;
  os << "]";
  return os.str();
}

void KVector::add(const KBasisElement& b, const GaussianRational& c) {
  if (c.is_zero()) return;
  const KBasisElement key = b.canonical();
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

void KVector::add(const KVector& v, const GaussianRational& c) {
  for (const auto& [b, x] : v.terms_) add(b, x * c);
}

KVector KVector::scaled(const GaussianRational& c) const {
  KVector out;
  out.add(*this, c);
  return out;
}

KVector KVector::swapped() const {
  KVector out;
  for (const auto& [b, c] : terms_) out.add(b.swapped(), c);
  return out;
}

cplx KVector::evaluate(const ConePoint& p) const {
  cplx sum = 0.0;
  for (const auto& [b, c] : terms_) sum += c.to_complex() * b.evaluate(p);
  return sum;
}

std::string KVector::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str() << "*" << b.str();
  }
  return os.str();
}

namespace {

KBasisElement shifted(const KBasisElement& b, int dn, int dl, int dk, int drsq) {
  return {b.n + dn, b.l + dl, b.k + dk, b.s1, b.s2, b.rsq + drsq};
}

// Exact Gaussian elimination for M d = c with rational M and Gaussian-rational c.
bool solve_exact(std::vector<std::vector<Rational>> M, std::vector<GaussianRational> c,
                 std::vector<GaussianRational>& d) {
  const std::size_t rows = M.size();
  const std::size_t cols = rows ? M[0].size() : 0;
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t p = row;
    while (p < rows && M[p][col] == 0) ++p;
    if (p == rows) continue;
    std::swap(M[p], M[row]);
    std::swap(c[p], c[row]);
    const Rational inv = 1 / M[row][col];
    for (auto& x : M[row]) x *= inv;
    c[row] = c[row] * GaussianRational(inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || M[r][col] == 0) continue;
      const Rational f = M[r][col];
      for (std::size_t j = 0; j < cols; ++j) M[r][j] -= f * M[row][j];
      c[r] = c[r] - c[row] * GaussianRational(f);
    }
    pivot_col.push_back(static_cast<int>(col));
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r)
    if (!c[r].is_zero()) return false;
  d.assign(cols, GaussianRational());
  for (std::size_t r = 0; r < pivot_col.size(); ++r) d[pivot_col[r]] = c[r];
  return true;
}

// Splits off one step of the rewriting; returns false when nothing applies.
bool reduce_step(const KBasisElement& b, const GaussianRational& c, KVector& out) {
  if (b.l == -1 && b.rsq >= 1) {
    out.add(KBasisElement{b.n, 1, b.k, -b.s1, b.s2, b.rsq - 1}, c);
    return true;
  }
  if (b.k == -1 && b.rsq >= 1) {
    out.add(KBasisElement{b.n, b.l, 1, b.s1, -b.s2, b.rsq - 1}, c);
    return true;
  }
  if (b.l < 0 || b.k < 0) return false;
  if (b.rsq >= 1) {
    out.add(shifted(b, -1, 0, 0, -1), c * GaussianRational(b.n - 1));
    out.add(shifted(b, -2, 0, 0, -1), c);
    return true;
  }
  return false;
}

}  // namespace

KVector divide_by_r2(const KVector& v) {
  if (v.is_zero()) return {};
  // Group by monomial; within a group solve sum_m d_m r^2 K~_m = sum_m c_m K~_m
  // using r^2 K~_m = (m-1) K~_{m-1} + K~_{m-2}.
  std::map<std::tuple<int, int, int, int, int>, std::map<int, GaussianRational>> groups;
  for (const auto& [b, c] : v.terms()) groups[{b.l, b.k, b.s1, b.s2, b.rsq}][b.n] = c;
  KVector out;
  for (const auto& [key, coeffs] : groups) {
    const int a = coeffs.begin()->first;
    const int top = coeffs.rbegin()->first;
    const int d_lo = a + 1;
    const int d_hi = std::max(top + 1, 1);
    const int e_lo = std::min(a, d_lo - 2);
    const int e_hi = std::max(top, d_hi - 1);
    const std::size_t U = d_hi - d_lo + 1, E = e_hi - e_lo + 1;
    std::vector<std::vector<Rational>> M(E, std::vector<Rational>(U, 0));
    std::vector<GaussianRational> rhs(E);
    for (int m = d_lo; m <= d_hi; ++m) {
      M[m - 1 - e_lo][m - d_lo] += m - 1;
      M[m - 2 - e_lo][m - d_lo] += 1;
    }
    for (const auto& [m, c] : coeffs) rhs[m - e_lo] = c;
    std::vector<GaussianRational> d;
    if (!solve_exact(M, rhs, d)) {
      std::ostringstream os;
      os << "coefficient combination at (l, k) = (" << std::get<0>(key) << ", " << std::get<1>(key)
         << ") is not divisible by r^2 inside the basis";
      throw OutsideRewriteTable(os.str());
    }
    const auto [l, k, s1, s2, rsq] = key;
    for (int m = d_lo; m <= d_hi; ++m) out.add(KBasisElement{m, l, k, s1, s2, rsq}, d[m - d_lo]);
  }
  return out;
}

KVector reduce(const KVector& v) {
  KVector cur = v;
  for (int guard = 0; guard < 10000; ++guard) {
    KVector next, pending;
    bool changed = false;
    for (const auto& [b, c] : cur.terms()) {
      if (reduce_step(b, c, next)) {
        changed = true;
      } else if (b.l < 0 || b.k < 0) {
        if (b.l < -1 || b.k < -1) throw OutsideRewriteTable("exponent below -1 in rewrite");
        pending.add(b, c);
      } else {
        next.add(b, c);
      }
    }
    if (!pending.is_zero()) {
      // Divided terms come back with rsq + 1 and fold on the next pass.
      const KVector q = divide_by_r2(pending);
      for (const auto& [b, c] : q.terms()) next.add(shifted(b, 0, 0, 0, 1), c);
      changed = true;
    }
    cur = std::move(next);
    if (!changed) return cur;
  }
  throw std::runtime_error("ktype::reduce did not terminate");
}

namespace {

template <typename Rule>
KVector apply_termwise(const KVector& v, Rule&& rule) {
  KVector out;
  for (const auto& [b, c] : v.terms()) out.add(rule(b), c);
  return out;
}

KVector finish(const KVector& v, const RewriteOptions& opt) { return opt.reduce_r2 ? reduce(v) : v; }

// (xi1 + s i xi2) b and (xi1 - s i xi2) b = r^2 [l - 1].
KVector raise_l(const KBasisElement& b) { return KVector(shifted(b, 0, 1, 0, 0)); }
KVector lower_l(const KBasisElement& b) { return KVector(shifted(b, 0, -1, 0, 1)); }

KVector two_xi1(const KBasisElement& b) { return raise_l(b) + lower_l(b); }
KVector two_i_xi2(const KBasisElement& b) { return (raise_l(b) - lower_l(b)).scaled(b.s1); }

KVector two_xi1(const KVector& v) { return apply_termwise(v, [](const auto& b) { return two_xi1(b); }); }
KVector two_i_xi2(const KVector& v) { return apply_termwise(v, [](const auto& b) { return two_i_xi2(b); }); }

void require_plain(const KBasisElement& b) {
  if (b.rsq != 0 || b.l < 0 || b.k < 0) throw std::invalid_argument("operator input must be a reduced basis element");
}

// -(1/4) (r2 part of Box) K~_n(2 r2) (xi3 + s i xi4)^k = (k - n) K~_{n+1} - K~_n.
KVector radial_part(const KBasisElement& b) {
  KVector B;
  B.add(shifted(b, 1, 0, 0, 0), b.k - b.n);
  B.add(b, -1);
  return B;
}

// deg applied to d_1 of the ambient extension, without the factor l.
KVector deg_tail(const KBasisElement& b) {
  KVector C;
  C.add(shifted(b, 0, -1, 0, 0), b.l + b.k);
  C.add(shifted(b, 1, -1, 0, 1), -2);
  return C;
}

KVector P1(const KBasisElement& b) {
  require_plain(b);
  KVector out = two_xi1(radial_part(b)).scaled(2);
  if (b.l != 0) out.add(deg_tail(b), -2 * b.l);
  return out;
}

KVector P2(const KBasisElement& b) {
  require_plain(b);
  // 4 xi2 B = -2i (2i xi2 B)
  KVector out = two_i_xi2(radial_part(b)).scaled(GaussianRational(0, -2));
  if (b.l != 0) out.add(deg_tail(b), GaussianRational(0, -2 * b.s1 * b.l));
  return out;
}

template <typename Op>
KVector via_swap(const KVector& v, Op&& op) {
  return op(v.swapped()).swapped();
}

}  // namespace

KVector apply_mult_xi(int j, const KVector& v, const RewriteOptions& opt) {
  switch (j) {
    case 1: return finish(two_xi1(v).scaled(Rational(1, 2)), opt);
    case 2: return finish(two_i_xi2(v).scaled(GaussianRational(0, Rational(-1, 2))), opt);
    case 3:
    case 4: return via_swap(v, [&](const KVector& w) { return apply_mult_xi(j - 2, w, opt); });
  }
  throw std::invalid_argument("apply_mult_xi: j must be in 1..4");
}

KVector apply_P(int j, const KVector& v, const RewriteOptions& opt) {
  switch (j) {
    case 1: return finish(apply_termwise(v, [](const auto& b) { return P1(b); }), opt);
    case 2: return finish(apply_termwise(v, [](const auto& b) { return P2(b); }), opt);
    case 3:
    case 4: return via_swap(v, [&](const KVector& w) { return apply_P(j - 2, w, opt); });
  }
  throw std::invalid_argument("apply_P: j must be in 1..4");
}

KVector apply_deg(const KVector& v, const RewriteOptions& opt) {
  return finish(apply_termwise(v,
                               [](const KBasisElement& b) {
                                 KVector out;
                                 out.add(b, b.l + b.k + 1 + 2 * b.rsq);
                                 out.add(shifted(b, 1, 0, 0, 1), -2);
                                 return out;
                               }),
                opt);
}

KVector apply_box22(const KVector& v) {
  return reduce(apply_termwise(v, [](const KBasisElement& b) {
    require_plain(b);
    KVector out;
    out.add(shifted(b, 1, 0, 0, 0), 4 * (b.k + 1));
    out.add(shifted(b, 2, 0, 0, 1), -4);
    return out;
  }));
}

KVector apply_raise_lower(int index, int sign_op, const KVector& v) {
  if (sign_op != 1 && sign_op != -1) throw std::invalid_argument("apply_raise_lower: sign must be +1 or -1");
  if (index == 2) return via_swap(v, [&](const KVector& w) { return apply_raise_lower(1, sign_op, w); });
  if (index != 1) throw std::invalid_argument("apply_raise_lower: index must be 1 or 2");
  return reduce(apply_termwise(v, [sign_op](const KBasisElement& b) {
    require_plain(b);
    KVector out;
    const int n = b.n, l = b.l, k = b.k;
    if (b.s1 == sign_op) {
      out.add(shifted(b, 1, 1, 0, 0), 2 * (k - n));
    } else {
      // At l = 0 this produces l = -1 terms, divided back by reduce().
      out.add(shifted(b, 0, -1, 0, 0), 2 * (n - l) * (l + k - n));
      out.add(shifted(b, -1, -1, 0, 0), 2 * (2 * l + k - n));
    }
    return out;
  }));
}

KVector apply_raise_lower_composed(int index, int sign_op, const KVector& v) {
  if (sign_op != 1 && sign_op != -1) throw std::invalid_argument("apply_raise_lower_composed: sign must be +1 or -1");
  const int a = index == 1 ? 1 : 3;
  if (index != 1 && index != 2) throw std::invalid_argument("apply_raise_lower_composed: index must be 1 or 2");
  const GaussianRational si(0, sign_op);
  KVector out = apply_mult_xi(a, v).scaled(2);
  out.add(apply_mult_xi(a + 1, v), si * GaussianRational(2));
  out.add(apply_P(a, v), Rational(1, 2));
  out.add(apply_P(a + 1, v), si * GaussianRational(Rational(1, 2)));
  return out;
}

KVector apply_X(int j, int k, const KVector& v) {
  int sign = 1;
  if (j > k) {
    std::swap(j, k);
    sign = -1;
  }
  if (!((j == 1 && k == 2) || (j == 3 && k == 4)))
    throw std::invalid_argument("apply_X: only X_12 and X_34 have closed rewrites; use ambient_X");
  return apply_termwise(v, [&](const KBasisElement& b) {
    const int m = j == 1 ? b.s1 * b.l : b.s2 * b.k;
    return KVector(b, GaussianRational(0, sign * m));
  });
}

KFiniteCertificate kfinite_certificate(const KBasisElement& b0, int max_dimension) {
  KFiniteCertificate cert;
  const KBasisElement b = b0.canonical();
  cert.in_l2 = b.in_l2();
  // Reduced row echelon form keyed by pivot element.
  std::map<KBasisElement, KVector> basis;
  std::deque<KVector> queue;
  auto insert = [&](KVector v) {
    for (const auto& [p, row] : basis) {
      auto it = v.terms().find(p);
      if (it != v.terms().end()) v.add(row, -it->second);
    }
    if (v.is_zero()) return;
    const auto [pivot, coef] = *v.terms().begin();
    v = v.scaled(GaussianRational(1) / coef);
    for (auto& [p, row] : basis) {
      auto it = row.terms().find(pivot);
      if (it != row.terms().end()) row.add(v, -it->second);
    }
    basis.emplace(pivot, v);
    for (const auto& [e, c] : v.terms()) cert.max_abs_n = std::max(cert.max_abs_n, std::abs(e.n));
    queue.push_back(std::move(v));
  };
  insert(KVector(b));
  while (!queue.empty()) {
    if (static_cast<int>(basis.size()) > max_dimension) {
      cert.dimension = static_cast<int>(basis.size());
      return cert;
    }
    const KVector v = queue.front();
    queue.pop_front();
    for (int index : {1, 2})
      for (int sign : {1, -1}) insert(apply_raise_lower(index, sign, v));
  }
  // X_12, X_34 act diagonally on basis elements, so the span is closed.
  cert.closure_finite = true;
  cert.dimension = static_cast<int>(basis.size());
  return cert;
}

// ---------------------------------------------------------------------------

Jet Jet::coordinate(const Vector4<double>& x, int i) {
  Jet j;
  j.v = x[i];
  j.g[i] = 1.0;
  return j;
}

Jet Jet::constant(cplx c) {
  Jet j;
  j.v = c;
  return j;
}

Jet Jet::compose(cplx phi, cplx dphi, cplx ddphi) const {
  Jet out;
  out.v = phi;
  for (int a = 0; a < 4; ++a) {
    out.g[a] = dphi * g[a];
    for (int b = 0; b < 4; ++b) out.h[a][b] = dphi * h[a][b] + ddphi * g[a] * g[b];
  }
  return out;
}

Jet& Jet::operator+=(const Jet& o) {
  v += o.v;
  for (int a = 0; a < 4; ++a) {
    g[a] += o.g[a];
    for (int b = 0; b < 4; ++b) h[a][b] += o.h[a][b];
  }
  return *this;
}

Jet Jet::scaled(cplx c) const {
  Jet out = *this;
  out.v *= c;
  for (int a = 0; a < 4; ++a) {
    out.g[a] *= c;
    for (int b = 0; b < 4; ++b) out.h[a][b] *= c;
  }
  return out;
}

Jet operator*(const Jet& x, const Jet& y) {
  Jet out;
  out.v = x.v * y.v;
  for (int a = 0; a < 4; ++a) {
    out.g[a] = x.g[a] * y.v + x.v * y.g[a];
    for (int b = 0; b < 4; ++b)
      out.h[a][b] = x.h[a][b] * y.v + x.g[a] * y.g[b] + x.g[b] * y.g[a] + x.v * y.h[a][b];
  }
  return out;
}

namespace {

Jet integer_power(const Jet& u, int m) {
  if (m == 0) return Jet::constant(1.0);
  const cplx z = u.v;
  const cplx dz = double(m) * std::pow(z, m - 1);
  const cplx ddz = m < 2 ? cplx(0.0) : double(m) * (m - 1) * std::pow(z, m - 2);
  return u.compose(std::pow(z, m), dz, ddz);
}

Jet block_radius(const Vector4<double>& x, int first) {
  const Jet a = Jet::coordinate(x, first), b = Jet::coordinate(x, first + 1);
  const Jet u = a * a + b * b;
  const double s = std::sqrt(u.v.real());
  return u.compose(s, 0.5 / s, -0.25 / (s * s * s));
}

}  // namespace

Jet ambient_jet(const KBasisElement& b, const Vector4<double>& x, Extension ext) {
  if (b.l < 0 || b.k < 0) throw std::domain_error("ambient_jet: negative exponent");
  const Jet rho = block_radius(x, ext == Extension::r2 ? 2 : 0);
  const double p = rho.v.real();
  const Jet g = rho.compose(ktilde(b.n, 2 * p), -2 * p * ktilde(b.n + 1, 2 * p),
                            -2 * ktilde(b.n + 1, 2 * p) + 4 * p * p * ktilde(b.n + 2, 2 * p));
  const cplx i(0.0, 1.0);
  const Jet z1 = Jet::coordinate(x, 0) + Jet::coordinate(x, 1).scaled(double(b.s1) * i);
  const Jet z2 = Jet::coordinate(x, 2) + Jet::coordinate(x, 3).scaled(double(b.s2) * i);
  return integer_power(rho, 2 * b.rsq) * g * integer_power(z1, b.l) * integer_power(z2, b.k);
}

Jet ambient_jet(const KVector& v, const Vector4<double>& x, Extension ext) {
  Jet out;
  for (const auto& [b, c] : v.terms()) out += ambient_jet(b, x, ext).scaled(c.to_complex());
  return out;
}

namespace {
void check_index(int j) {
  if (j < 1 || j > 4) throw std::invalid_argument("coordinate index must be in 1..4");
}
}  // namespace

cplx ambient_P(int j, const Jet& F, const Vector4<double>& x, int shift) {
  check_index(j);
  const int a = j - 1;
  cplx euler = 0.0;
  for (int i = 0; i < 4; ++i) euler += x[i] * F.h[i][a];
  const cplx deg_dj = euler + F.g[a];
  return double(kEpsilon[a]) * x[a] * F.box22() - 2.0 * deg_dj - 4.0 * double(shift) * F.g[a];
}

cplx ambient_deg(const Jet& F, const Vector4<double>& x) {
  cplx out = F.v;
  for (int i = 0; i < 4; ++i) out += x[i] * F.g[i];
  return out;
}

cplx ambient_X(int j, int k, const Jet& F, const Vector4<double>& x) {
  check_index(j);
  check_index(k);
  const int a = j - 1, b = k - 1;
  return double(kEpsilon[a] * kEpsilon[b]) * x[a] * F.g[b] - x[b] * F.g[a];
}

cplx ambient_XX(int p, int q, int j, int k, const Jet& F, const Vector4<double>& x) {
  check_index(p);
  check_index(q);
  check_index(j);
  check_index(k);
  const int a = j - 1, b = k - 1;
  const double e = kEpsilon[a] * kEpsilon[b];
  // d_m (X_jk F)
  auto d = [&](int m) {
    return e * ((m == a ? F.g[b] : 0.0) + x[a] * F.h[b][m]) - ((m == b ? F.g[a] : 0.0) + x[b] * F.h[a][m]);
  };
  const int c = p - 1, f = q - 1;
  return double(kEpsilon[c] * kEpsilon[f]) * x[c] * d(f) - x[f] * d(c);
}

cplx bipolar_box22(const KBasisElement& b, const Vector4<double>& x) {
  // The (r1, t1) Laplacian annihilates r1^l e^{i l t1}; the (r2, t2) part acts
  // on K~_n(2 r2) r2^k e^{i k t2} through the recurrence.
  const double r2 = std::hypot(x[2], x[3]);
  const cplx z1 = std::pow(cplx(x[0], b.s1 * x[1]), b.l);
  const cplx z2 = std::pow(cplx(x[2], b.s2 * x[3]), b.k);
  return 4.0 * ((b.k - b.n) * ktilde(b.n + 1, 2 * r2) - ktilde(b.n, 2 * r2)) * z1 * z2;
}

}  // namespace conekit::ktype
