#pragma once

#include <cmath>
#include <vector>

#include "qzeta/types.hpp"

namespace qzeta {

/// Gauss-Legendre nodes and weights on [-1, 1].
class GaussLegendreRule {
 public:
  explicit GaussLegendreRule(int n = 16) : nodes_(n), weights_(n) {
    if (n < 1) throw std::invalid_argument("GaussLegendreRule: need at least one node");
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        if (n == 1) p0 = 1.0;
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes_[i] = -x;
      nodes_[n - 1 - i] = x;
      weights_[i] = weights_[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }

  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  double node(int i) const noexcept { return nodes_[i]; }
  double weight(int i) const noexcept { return weights_[i]; }

  template <typename F>
  Complex integrate(F&& f, double a, double b) const {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * Complex(f(mid + half * nodes_[i]));
    return acc * half;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

namespace detail {

template <typename F>
Complex adaptive_step(const GaussLegendreRule& rule, F& f, double a, double b, Complex whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const Complex left = rule.integrate(f, a, mid);
  const Complex right = rule.integrate(f, mid, b);
  const Complex refined = left + right;
  const double diff = std::abs(refined - whole);
  if (!std::isfinite(diff)) throw ConvergenceError("adaptive quadrature: non-finite integrand");
  if (diff <= tol || diff <= 1e-15 * std::abs(refined)) return refined;
  if (depth <= 0 || mid <= a || mid >= b) {
    throw ConvergenceError("adaptive quadrature did not converge on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "]");
  }
  return adaptive_step(rule, f, a, mid, left, 0.5 * tol, depth - 1) +
         adaptive_step(rule, f, mid, b, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive bisection with a fixed Gauss-Legendre rule on each panel.
template <typename F>
Complex integrate_adaptive(F&& f, double a, double b, double abs_tol, const GaussLegendreRule& rule,
                           int max_depth = 40) {
  const Complex whole = rule.integrate(f, a, b);
  return detail::adaptive_step(rule, f, a, b, whole, abs_tol, max_depth);
}

/// Adaptive integral whose absolute tolerance is rel_tol times a one-pass
/// estimate of the integral of |f|, so oscillating integrands with small net
/// value terminate.
template <typename F>
Complex integrate_scaled(F&& f, double a, double b, double rel_tol, const GaussLegendreRule& rule,
                         double abs_floor = 0.0) {
  const Complex mag = rule.integrate([&](double x) { return std::abs(Complex(f(x))); }, a, b);
  const double tol = std::max(rel_tol * mag.real(), abs_floor);
  if (tol == 0.0) return Complex(0.0, 0.0);
  return integrate_adaptive(f, a, b, tol, rule);
}

}  // namespace qzeta
