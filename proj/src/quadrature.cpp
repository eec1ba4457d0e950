#include "conekit/quadrature.hpp"

#include <map>
#include <mutex>

namespace conekit::quad {

const GaussRule& gauss_legendre(int n) {
  static std::mutex guard;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(guard);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pi = std::numbers::pi;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return cache.emplace(n, std::move(rule)).first->second;
}

namespace {

// Half-line piece starting at t0 with phase phi(t0 + dir*u) oriented so it
// increases; the trig sign flip for sin under phase negation is applied here.
Estimate<double> hyperbolic_piece(double alpha, double beta, double t0, double dir, Trig trig,
                                  const Tolerance& tol, double max_t) {
  auto raw = [=](double u) {
    const double t = t0 + dir * u;
    return alpha * std::sinh(t) + beta * std::cosh(t);
  };
  auto raw_d = [=](double u) {
    const double t = t0 + dir * u;
    return dir * (alpha * std::cosh(t) + beta * std::sinh(t));
  };
  const double probe = raw(1.0) - raw(0.0);
  const double orient = probe >= 0 ? 1.0 : -1.0;
  auto phi = [&](double u) { return orient * raw(u); };
  auto dphi = [&](double u) { return orient * raw_d(u); };
  auto one = [](double) { return 1.0; };
  auto est = oscillatory_half_line(phi, dphi, one, 0.0, trig, tol, 400, max_t);
  if (trig == Trig::sin && orient < 0) est.value = -est.value;
  return est;
}

}  // namespace

Estimate<double> hyperbolic_oscillatory(double alpha, double beta, Trig trig, const Tolerance& tol,
                                        double max_t) {
  const double aa = std::abs(alpha), ab = std::abs(beta);
  if (!(std::abs(aa - ab) > 1e-14 * std::max(aa, ab)))
    throw std::domain_error("hyperbolic_oscillatory: |alpha| == |beta| diverges");
  // Split at the stationary point (|beta| > |alpha|) or the phase zero.
  const double t0 = ab > aa ? std::atanh(-alpha / beta) : std::atanh(-beta / alpha);
  auto right = hyperbolic_piece(alpha, beta, t0, 1.0, trig, tol, max_t);
  auto left = hyperbolic_piece(alpha, beta, t0, -1.0, trig, tol, max_t);
  Estimate<double> out;
  out.value = right.value + left.value;
  out.error = right.error + left.error;
  out.evaluations = right.evaluations + left.evaluations;
  out.converged = right.converged && left.converged;
  return out;
}

}  // namespace conekit::quad
