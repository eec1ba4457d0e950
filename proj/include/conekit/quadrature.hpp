// Adaptive and oscillatory quadrature, sequence acceleration, deterministic
// reductions.
#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <exception>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

namespace conekit {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace quad {

template <typename T>
struct Estimate {
  T value{};
  double error = 0.0;
  long evaluations = 0;
  bool converged = true;
};

struct Tolerance {
  double abs = 1e-13;
  double rel = 1e-11;
  int max_intervals = 4000;

  double target(double magnitude) const { return std::max(abs, rel * magnitude); }
};

// Neumaier summation. Complex values are compensated per component.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    if constexpr (std::is_floating_point_v<T>) {
      add_real(sum_, comp_, x);
    } else {
      double sr = sum_.real(), cr = comp_.real(), si = sum_.imag(), ci = comp_.imag();
      add_real(sr, cr, x.real());
      add_real(si, ci, x.imag());
      sum_ = T(sr, si);
      comp_ = T(cr, ci);
    }
  }
  T value() const { return sum_ + comp_; }

 private:
  static void add_real(double& s, double& c, double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  T sum_{};
  T comp_{};
};

template <typename T>
T compensated_sum(std::span<const T> xs) {
  CompensatedSum<T> acc;
  for (const T& x : xs) acc.add(x);
  return acc.value();
}

// Evaluates f(0..n-1) on up to `workers` threads; results are indexed, so any
// reduction performed afterwards in index order is independent of scheduling.
template <typename F>
auto parallel_map(std::size_t n, F&& f, unsigned workers)
    -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<R> out(n);
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned count = std::min<unsigned>(workers, static_cast<unsigned>(n));
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

namespace detail {
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
}  // namespace detail

template <typename F>
using value_of = std::invoke_result_t<F&, double>;

// One Gauss-Kronrod 7/15 panel. Returns (Kronrod value, |K - G|).
template <typename F>
std::pair<value_of<F>, double> gauss_kronrod15(F& f, double a, double b) {
  using T = value_of<F>;
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T fc = f(c);
  T k = fc * detail::kWgk[7];
  T g = fc * detail::kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * detail::kXgk[j];
    T f1 = f(c - dx), f2 = f(c + dx);
    k += (f1 + f2) * detail::kWgk[j];
    if (j % 2 == 1) g += (f1 + f2) * detail::kWg[j / 2];
  }
  return {k * h, std::abs((k - g) * h)};
}

// Globally adaptive bisection on the panel with the largest error. Panels
// are summed in left-to-right order, so the result is reproducible.
template <typename F>
Estimate<value_of<F>> integrate(F&& f, double a, double b, const Tolerance& tol,
                                std::span<const double> breaks = {}) {
  using T = value_of<F>;
  struct Panel {
    double a, b;
    T value;
    double error;
  };
  Estimate<T> out;
  if (a == b) return out;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  std::vector<double> cuts{a};
  for (double x : breaks)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Panel> panels;
  auto by_error = [](const Panel& p, const Panel& q) { return p.error < q.error; };
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto [v, e] = gauss_kronrod15(f, cuts[i], cuts[i + 1]);
    panels.push_back({cuts[i], cuts[i + 1], v, e});
    total_err += e;
    out.evaluations += 15;
  }
  std::make_heap(panels.begin(), panels.end(), by_error);
  auto current_value = [&] {
    CompensatedSum<T> acc;
    for (const auto& p : panels) acc.add(p.value);
    return acc.value();
  };
  T value = current_value();
  while (total_err > tol.target(std::abs(value))) {
    if (static_cast<int>(panels.size()) >= tol.max_intervals) {
      out.converged = false;
      break;
    }
    std::pop_heap(panels.begin(), panels.end(), by_error);
    Panel worst = panels.back();
    panels.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      panels.push_back(worst);
      std::push_heap(panels.begin(), panels.end(), by_error);
      out.converged = false;
      break;
    }
    auto [v1, e1] = gauss_kronrod15(f, worst.a, mid);
    auto [v2, e2] = gauss_kronrod15(f, mid, worst.b);
    out.evaluations += 30;
    panels.push_back({worst.a, mid, v1, e1});
    std::push_heap(panels.begin(), panels.end(), by_error);
    panels.push_back({mid, worst.b, v2, e2});
    std::push_heap(panels.begin(), panels.end(), by_error);
    value += (v1 + v2) - worst.value;
    total_err += e1 + e2 - worst.error;
    if (total_err < 0.0) total_err = 0.0;
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& p, const Panel& q) { return p.a < q.a; });
  CompensatedSum<T> acc;
  double err = 0.0;
  for (const auto& p : panels) {
    acc.add(p.value);
    err += p.error;
  }
  out.value = acc.value() * sign;
  out.error = err;
  return out;
}

// Integral over [a, inf) through x = a + u / (1 - u).
template <typename F>
Estimate<value_of<F>> integrate_half_line(F&& f, double a, const Tolerance& tol,
                                          std::span<const double> breaks = {}) {
  std::vector<double> ubreaks;
  for (double x : breaks)
    if (x > a) ubreaks.push_back((x - a) / (1.0 + (x - a)));
  auto g = [&](double u) {
    const double w = 1.0 - u;
    return f(a + u / w) * (1.0 / (w * w));
  };
  return integrate(g, 0.0, 1.0, tol, ubreaks);
}

// Gauss-Legendre rule with n nodes on [-1, 1], cached per n.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

template <typename F>
value_of<F> gauss_legendre_panel(F& f, double a, double b, int n) {
  const GaussRule& rule = gauss_legendre(n);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  value_of<F> s{};
  for (int i = 0; i < n; ++i) s += f(c + h * rule.nodes[i]) * rule.weights[i];
  return s * h;
}

// Wynn epsilon algorithm on a stream of partial sums.
template <typename T>
class EpsilonAccelerator {
 public:
  explicit EpsilonAccelerator(std::size_t window = 30) : window_(window) {}

  void push(T partial_sum) {
    sums_.push_back(partial_sum);
    if (sums_.size() > window_) sums_.erase(sums_.begin());
    T est = extrapolate();
    history_.push_back(est);
    const std::size_t h = history_.size();
    if (h >= 3) {
      error_ = std::abs(history_[h - 1] - history_[h - 2]) + std::abs(history_[h - 1] - history_[h - 3]);
    } else {
      error_ = std::numeric_limits<double>::infinity();
    }
  }

  T estimate() const { return history_.empty() ? T{} : history_.back(); }
  double error() const { return error_; }
  std::size_t count() const { return history_.size(); }

 private:
  T extrapolate() const {
    const std::size_t n = sums_.size();
    std::vector<T> prev(n, T{});
    std::vector<T> cur(sums_.begin(), sums_.end());
    T best = cur.back();
    for (std::size_t k = 1; k < n; ++k) {
      std::vector<T> next(n - k);
      for (std::size_t j = 0; j + k < n; ++j) {
        T diff = cur[j + 1] - cur[j];
        if (diff == T{}) return (k % 2 == 1) ? cur[j + 1] : best;
        next[j] = prev[j + 1] + T(1) / diff;
      }
      prev = std::move(cur);
      cur = std::move(next);
      if (k % 2 == 0) best = cur.back();
      prev.resize(n - k);
    }
    return best;
  }

  std::size_t window_;
  std::vector<T> sums_;
  std::vector<T> history_;
  double error_ = std::numeric_limits<double>::infinity();
};

// Polynomial extrapolation to h = 0 of samples (h_i, y_i) by Neville's scheme
// using the last order+1 samples. The error is the change from order-1.
template <typename T>
Estimate<T> extrapolate_to_zero(std::span<const double> h, std::span<const T> y, int order) {
  const std::size_t n = h.size();
  if (n != y.size() || n == 0) throw std::invalid_argument("extrapolate_to_zero: size mismatch");
  const std::size_t m = std::min<std::size_t>(n, static_cast<std::size_t>(order) + 1);
  const std::size_t first = n - m;
  std::vector<T> p(y.begin() + first, y.end());
  T lower = p.back();
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = 0; i + level < m; ++i) {
      const double hi = h[first + i], hj = h[first + i + level];
      p[i] = (hj * p[i] - hi * p[i + 1]) / (hj - hi);
    }
    if (level + 2 == m) lower = p[1];
  }
  Estimate<T> out;
  out.value = p[0];
  out.error = std::abs(p[0] - lower);
  return out;
}

enum class Trig { cos, sin };

inline double trig_eval(Trig t, double v) { return t == Trig::cos ? std::cos(v) : std::sin(v); }

// Smallest zero of trig strictly above v.
inline double next_trig_zero(Trig t, double v) {
  const double pi = std::numbers::pi;
  const double shift = (t == Trig::cos) ? 0.5 * pi : 0.0;
  double k = std::floor((v - shift) / pi) + 1.0;
  double z = shift + k * pi;
  if (z <= v) z += pi;
  return z;
}

// Solves phi(t) = target for t > lo with phi increasing; safeguarded Newton.
template <typename Phi, typename DPhi>
double solve_increasing(Phi& phi, DPhi& dphi, double lo, double target) {
  double step = 0.25;
  double hi = lo + step;
  int guard = 0;
  while (phi(hi) < target) {
    lo = hi;
    step *= 2.0;
    hi = lo + step;
    if (++guard > 200) throw ConvergenceError("solve_increasing: unbounded phase");
  }
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double g = phi(t) - target;
    if (g > 0) hi = t; else lo = t;
    const double d = dphi(t);
    double tn = (d > 0) ? t - g / d : 0.5 * (lo + hi);
    if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
    if (std::abs(tn - t) <= 1e-15 * std::max(1.0, std::abs(t)) || hi - lo <= 4e-16 * std::max(1.0, std::abs(t)))
      return tn;
    t = tn;
  }
  return t;
}

// Integral of amp(t) * trig(phi(t)) over [t0, inf) where phi increases to
// +inf. Panels run between consecutive zeros of trig(phi); the alternating
// partial sums are accelerated with the epsilon algorithm.
template <typename Phi, typename DPhi, typename Amp>
Estimate<double> oscillatory_half_line(Phi phi, DPhi dphi, Amp amp, double t0, Trig trig,
                                       const Tolerance& tol, int max_panels = 400,
                                       double max_t = std::numeric_limits<double>::infinity()) {
  Estimate<double> out;
  auto integrand = [&](double t) { return amp(t) * trig_eval(trig, phi(t)); };
  double z = next_trig_zero(trig, phi(t0) + 1e-12);
  double t1 = solve_increasing(phi, dphi, t0, z);
  Tolerance first_tol = tol;
  first_tol.abs *= 0.1;
  auto head = integrate(integrand, t0, t1, first_tol);
  out.evaluations += head.evaluations;
  CompensatedSum<double> partial;
  partial.add(head.value);
  EpsilonAccelerator<double> eps;
  double err_head = head.error;
  double t = t1;
  int small_run = 0;
  for (int k = 0; k < max_panels; ++k) {
    z += std::numbers::pi;
    const double tn = solve_increasing(phi, dphi, t, z);
    if (tn > max_t) break;
    Tolerance panel_tol = tol;
    panel_tol.abs *= 0.01;
    auto piece = integrate(integrand, t, tn, panel_tol);
    out.evaluations += piece.evaluations;
    err_head += piece.error;
    partial.add(piece.value);
    eps.push(partial.value());
    t = tn;
    const double target = tol.target(std::abs(eps.estimate()));
    small_run = std::abs(piece.value) < 1e-3 * target ? small_run + 1 : 0;
    if (small_run >= 3) {
      out.value = partial.value();
      out.error = err_head + std::abs(piece.value);
      return out;
    }
    if (k >= 6 && eps.error() < target) {
      out.value = eps.estimate();
      out.error = eps.error() + err_head;
      return out;
    }
  }
  out.value = eps.estimate();
  out.error = eps.error() + err_head;
  out.converged = false;
  return out;
}

// Integral over [a, inf) of a function whose oscillation has asymptotic
// half-period `half_period`; panels of that length, epsilon-accelerated.
template <typename F>
Estimate<value_of<F>> periodic_tail(F&& f, double a, double half_period, const Tolerance& tol,
                                    int max_panels = 400) {
  using T = value_of<F>;
  Estimate<T> out;
  CompensatedSum<T> partial;
  EpsilonAccelerator<T> eps;
  double err_sum = 0.0;
  int small_run = 0;
  Tolerance panel_tol = tol;
  panel_tol.abs *= 0.01;
  for (int k = 0; k < max_panels; ++k) {
    const double lo = a + k * half_period, hi = a + (k + 1) * half_period;
    auto piece = integrate(f, lo, hi, panel_tol);
    out.evaluations += piece.evaluations;
    err_sum += piece.error;
    partial.add(piece.value);
    eps.push(partial.value());
    const double target = tol.target(std::abs(eps.estimate()));
    small_run = std::abs(piece.value) < 1e-3 * target ? small_run + 1 : 0;
    if (small_run >= 3) {
      out.value = partial.value();
      out.error = err_sum;
      return out;
    }
    if (k >= 6 && eps.error() < target) {
      out.value = eps.estimate();
      out.error = eps.error() + err_sum;
      return out;
    }
  }
  out.value = eps.estimate();
  out.error = eps.error() + err_sum;
  out.converged = false;
  return out;
}

// Integral over the real line of trig(alpha sinh t + beta cosh t) dt, which
// converges conditionally whenever |alpha| != |beta|.
Estimate<double> hyperbolic_oscillatory(double alpha, double beta, Trig trig, const Tolerance& tol,
                                        double max_t = std::numeric_limits<double>::infinity());

}  // namespace quad
}  // namespace conekit
