#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "knotscatter/error.hpp"

namespace knotscatter {

struct GaussLegendreRule {
  std::vector<double> nodes;   // on [-1, 1]
  std::vector<double> weights;
};

namespace detail {

inline GaussLegendreRule build_gauss_legendre(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 1; k < n; ++k) {
        const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(x), p0 = P_{n-1}(x)
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 1; k < n; ++k) {
        const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2)
    rule.nodes[n / 2] = 0.0;
  return rule;
}

} // namespace detail

/// n-point Gauss-Legendre rule on [-1, 1], memoized.
inline std::shared_ptr<const GaussLegendreRule> gauss_legendre(int n) {
  if (n < 1)
    throw InvalidArgument("gauss_legendre: order must be positive");
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto &slot = cache[n];
  if (!slot)
    slot = std::make_shared<const GaussLegendreRule>(
        detail::build_gauss_legendre(n));
  return slot;
}

/// Integral of f over [a, b] with an n-point Gauss-Legendre rule.
template <class F> auto gauss_legendre_integrate(F &&f, double a, double b, int n) {
  const auto rule = gauss_legendre(n);
  const double h = 0.5 * (b - a), c = 0.5 * (a + b);
  decltype(f(a)) sum{};
  for (int i = 0; i < n; ++i)
    sum += rule->weights[i] * f(c + h * rule->nodes[i]);
  return h * sum;
}

struct SphereNode {
  double theta;
  double phi;
  double weight;
};

inline constexpr int kSphereRuleTheta = 50;
inline constexpr int kSphereRulePhi = 128;

/// Gauss-Legendre in cos(theta) times a uniform trapezoid in phi.
inline const std::vector<SphereNode> &
sphere_rule(int n_theta = kSphereRuleTheta, int n_phi = kSphereRulePhi) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<SphereNode>> cache;
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.try_emplace({n_theta, n_phi});
  if (inserted) {
    const auto gl = gauss_legendre(n_theta);
    const double dphi = 2.0 * std::numbers::pi / n_phi;
    for (int i = 0; i < n_theta; ++i)
      for (int j = 0; j < n_phi; ++j)
        it->second.push_back(
            {std::acos(gl->nodes[i]), dphi * j, gl->weights[i] * dphi});
  }
  return it->second;
}

template <class T> struct Extrapolated {
  T value;
  double error;
};

/// Wynn epsilon acceleration of a sequence of partial sums.
template <class T> Extrapolated<T> wynn_epsilon(const std::vector<T> &s) {
  const std::size_t n = s.size();
  if (n == 0)
    throw InvalidArgument("wynn_epsilon: empty sequence");
  if (n < 3)
    return {s.back(), n == 2 ? std::abs(s[1] - s[0]) : 0.0};
  // prev = eps_{k-1}, cur = eps_k; columns shrink by one each step
  std::vector<T> prev(n + 1, T{}), cur(s.begin(), s.end());
  T best = s.back(), last_best = s[n - 2];
  for (std::size_t k = 1; cur.size() > 1; ++k) {
    std::vector<T> next(cur.size() - 1);
    bool stalled = false;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const T diff = cur[i + 1] - cur[i];
      if (std::abs(diff) == 0.0) {
        stalled = true;
        break;
      }
      next[i] = prev[i + 1] + T(1) / diff;
    }
    if (stalled)
      break;
    prev = std::move(cur);
    cur = std::move(next);
    if (k % 2 == 0) {
      last_best = cur.size() > 1 ? cur[cur.size() - 2] : best;
      best = cur.back();
    }
  }
  return {best, std::abs(best - last_best)};
}

/// Repeated pairwise averaging of the trailing partial sums; for
/// alternating-like tails this is an Euler transform.
template <class T> T iterated_average(std::vector<T> s, int levels) {
  for (int l = 0; l < levels && s.size() > 1; ++l) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      s[i] = 0.5 * (s[i] + s[i + 1]);
    s.pop_back();
  }
  return s.back();
}

/// Integral of f over [a, infinity) for an integrand oscillating with a
/// known period: fixed panels of length half_period, Gauss-Legendre on each,
/// partial sums accelerated by iterated averaging.
template <class F>
auto oscillatory_tail(F &&f, double a, double half_period, int n_panels,
                      int gl_order = 20, int levels = 20) {
  using T = decltype(f(a));
  std::vector<T> partial;
  partial.reserve(n_panels);
  T sum{};
  for (int i = 0; i < n_panels; ++i) {
    const double lo = a + i * half_period;
    sum += gauss_legendre_integrate(f, lo, lo + half_period, gl_order);
    partial.push_back(sum);
  }
  const int lv = std::min<int>(levels, static_cast<int>(partial.size()) - 1);
  std::vector<T> tail(partial.end() - (lv + 1), partial.end());
  return iterated_average(std::move(tail), lv);
}

} // namespace knotscatter
