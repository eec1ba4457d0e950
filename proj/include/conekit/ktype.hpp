// Exact algebra of the K-finite vectors K~_n(2r) (xi1 + s1 i xi2)^l (xi3 + s2 i xi4)^k
// under multiplication, P_j, deg, X_jk and the raising/lowering combinations,
// plus a jet-based ambient differential oracle.
#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "conekit/geometry.hpp"

namespace conekit::ktype {

using Rational = boost::multiprecision::cpp_rational;
using cplx = std::complex<double>;

struct GaussianRational {
  Rational re = 0, im = 0;

  GaussianRational() = default;
  GaussianRational(long v) : re(v) {}  // NOLINT: integers promote
  GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  static GaussianRational i() { return {0, 1}; }

  bool is_zero() const { return re == 0 && im == 0; }
  cplx to_complex() const { return {re.convert_to<double>(), im.convert_to<double>()}; }
  std::string str() const;

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianRational operator-() const { return {-re, -im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) { return a.re == b.re && a.im == b.im; }
};

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);

// r^{2 rsq} K~_n(2r) (xi1 + s1 i xi2)^l (xi3 + s2 i xi4)^k. rsq is nonzero only
// in the r^2-symbolic mode; l or k may be -1 transiently during rewriting.
struct KBasisElement {
  int n = 0;
  int l = 0;
  int k = 0;
  int s1 = 1;
  int s2 = 1;
  int rsq = 0;

  KBasisElement canonical() const;
  bool in_l2() const { return n <= std::min(k, l); }
  // The (xi1, xi2) <-> (xi3, xi4) exchange.
  KBasisElement swapped() const { return {n, k, l, s2, s1, rsq}; }
  cplx evaluate(const ConePoint& p) const;
  std::string str() const;

  auto key() const { return std::tie(n, l, k, s1, s2, rsq); }
  friend bool operator<(const KBasisElement& a, const KBasisElement& b) { return a.key() < b.key(); }
  friend bool operator==(const KBasisElement& a, const KBasisElement& b) { return a.key() == b.key(); }
};

class KVector {
 public:
  KVector() = default;
  KVector(const KBasisElement& b, GaussianRational c = 1) { add(b, std::move(c)); }

  void add(const KBasisElement& b, const GaussianRational& c);
  void add(const KVector& v, const GaussianRational& c = 1);
  const std::map<KBasisElement, GaussianRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  KVector scaled(const GaussianRational& c) const;
  KVector swapped() const;
  cplx evaluate(const ConePoint& p) const;
  std::string str() const;

  friend KVector operator+(KVector a, const KVector& b) {
    a.add(b);
    return a;
  }
  friend KVector operator-(KVector a, const KVector& b) {
    a.add(b, -1);
    return a;
  }
  friend bool operator==(const KVector& a, const KVector& b) { return a.terms_ == b.terms_; }

 private:
  std::map<KBasisElement, GaussianRational> terms_;
};

// Raised when an l = -1 (or k = -1) term cannot be divided back into the basis.
class OutsideRewriteTable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RewriteOptions {
  // false keeps r^2 factors symbolic, reproducing the intermediate lines.
  bool reduce_r2 = true;
};

// Eliminates r^2 with r^2 K~_n(2r) = (n-1) K~_{n-1}(2r) + K~_{n-2}(2r) and
// folds l = -1 terms back through r^2 (xi1 + s i xi2)^{-1} = xi1 - s i xi2.
KVector reduce(const KVector& v);
// Divides a K~-combination at a fixed monomial by r^2 exactly, if possible.
KVector divide_by_r2(const KVector& v);

KVector apply_mult_xi(int j, const KVector& v, const RewriteOptions& opt = {});
KVector apply_P(int j, const KVector& v, const RewriteOptions& opt = {});
KVector apply_deg(const KVector& v, const RewriteOptions& opt = {});
// Box_{2,2} of the r2-extension, restricted to the cone.
KVector apply_box22(const KVector& v);
// Closed forms: index 1 acts on (l, s1), index 2 on (k, s2);
// sign_op selects 2(xi + i sign xi') + (P + i sign P')/2.
KVector apply_raise_lower(int index, int sign_op, const KVector& v);
// The same operator assembled from apply_mult_xi and apply_P.
KVector apply_raise_lower_composed(int index, int sign_op, const KVector& v);
// X_12 and X_34 only; mixed pairs have no closed rewrite.
KVector apply_X(int j, int k, const KVector& v);

struct KFiniteCertificate {
  bool in_l2 = false;
  bool closure_finite = false;
  int dimension = 0;
  int max_abs_n = 0;
};

// Span of the orbit of b under the four raising/lowering operators and
// X_12, X_34, searched up to max_dimension.
KFiniteCertificate kfinite_certificate(const KBasisElement& b, int max_dimension = 5000);

// ---------------------------------------------------------------------------
// Ambient oracle

// Value, gradient and Hessian of a complex function on R^4.
struct Jet {
  cplx v{};
  std::array<cplx, 4> g{};
  std::array<std::array<cplx, 4>, 4> h{};

  static Jet coordinate(const Vector4<double>& x, int i);
  static Jet constant(cplx c);
  // phi(u) with phi', phi'' given at u.v.
  Jet compose(cplx phi, cplx dphi, cplx ddphi) const;
  Jet& operator+=(const Jet& o);
  Jet scaled(cplx c) const;
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  cplx box22() const { return h[0][0] + h[1][1] - h[2][2] - h[3][3]; }
};

enum class Extension { r2, r1 };

Jet ambient_jet(const KBasisElement& b, const Vector4<double>& x, Extension ext = Extension::r2);
Jet ambient_jet(const KVector& v, const Vector4<double>& x, Extension ext = Extension::r2);

inline constexpr std::array<int, 4> kEpsilon = {1, 1, -1, -1};

// eps_j xi_j Box - 2 deg d_j (shift = 0) or eps_j xi_j Box - (2 deg + 4) d_j (shift = 1).
cplx ambient_P(int j, const Jet& F, const Vector4<double>& x, int shift = 0);
cplx ambient_deg(const Jet& F, const Vector4<double>& x);
cplx ambient_X(int j, int k, const Jet& F, const Vector4<double>& x);
// X_pq (X_jk F).
cplx ambient_XX(int p, int q, int j, int k, const Jet& F, const Vector4<double>& x);

// Bipolar formula for Box of the r2-extension of b, evaluated at an
// ambient point.
cplx bipolar_box22(const KBasisElement& b, const Vector4<double>& x);

}  // namespace conekit::ktype
