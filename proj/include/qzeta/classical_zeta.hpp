#pragma once

// Classical zeta and Hurwitz zeta through Euler-Maclaurin summation, plus the
// finite Euler-Maclaurin identity for an arbitrary smooth summand.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qzeta/bernoulli.hpp"
#include "qzeta/num_kernel.hpp"
#include "qzeta/quadrature.hpp"
#include "qzeta/types.hpp"

namespace qzeta {

struct EMConfig {
  int M = 10;             // Bernoulli correction terms
  int quad_points = 16;   // Gauss nodes per panel
  double cutoff_tol = 1e-16;

  void validate() const {
    if (M < 1) throw std::invalid_argument("EMConfig.M must be >= 1");
    if (static_cast<std::size_t>(M) + 1 > default_bernoulli_table().capacity()) {
      throw std::invalid_argument("EMConfig.M exceeds the Bernoulli table capacity");
    }
    if (quad_points < 2) throw std::invalid_argument("EMConfig.quad_points must be >= 2");
    if (!(cutoff_tol > 0.0)) throw std::invalid_argument("EMConfig.cutoff_tol must be positive");
  }
};

namespace detail {

inline double factorial_d(int n) {
  double f = 1.0;
  for (int j = 2; j <= n; ++j) f *= j;
  return f;
}

inline double poly_eval(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

inline double max_abs_bernoulli_poly(const std::vector<double>& c) {
  double m = 0.0;
  for (int i = 0; i <= 256; ++i) m = std::max(m, std::abs(poly_eval(c, i / 256.0)));
  return m * 1.01;
}

/// int_X^inf B~_j(x) (x + a - 1)^{-w} dx for integer X, by integrating by parts
/// until the boundary terms fall below `tol`:
///   sum_i -b_{j+1+i} Y^{-w-i} (w)_i / ((j+1)(j+2)...(j+1+i)),  Y = X + a - 1.
inline Complex em_tail(int j, const Complex& w, double Y, double tol) {
  const BernoulliTable& table = default_bernoulli_table();
  Complex coeff = std::exp(-w * std::log(Y)) / static_cast<double>(j + 1);
  Complex acc(0.0, 0.0);
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; static_cast<std::size_t>(j) + 1 + i <= table.capacity(); ++i) {
    const double b = to_double(table.alternate(static_cast<std::size_t>(j) + 1 + i));
    const Complex term = -b * coeff;
    acc += term;
    if (b != 0.0) {
      if (std::abs(term) < tol) return acc;
      if (std::abs(term) > prev) throw ConvergenceError("Euler-Maclaurin tail expansion diverged");
      prev = std::abs(term);
    }
    coeff *= (w + static_cast<double>(i)) / (Y * static_cast<double>(j + 2 + i));
  }
  return acc;
}

/// Terms summed directly before Euler-Maclaurin takes over at a + N. The
/// correction terms grow like (|s| / (2 pi (a + N)))^k, so N tracks |Im s|;
/// a < 1 is always lifted to at least 1.
inline int direct_head_length(const Complex& s, double a) {
  const double lift = a < 1.0 ? std::ceil(1.0 - a) : 0.0;
  return static_cast<int>(std::max(lift, std::ceil(std::abs(s.imag()) / 2.0 - a)));
}

/// Euler-Maclaurin continuation of sum_{n>=0} (n + a)^{-s} with M corrections.
inline Complex hurwitz_em_impl(const Complex& s, double a0, const EMConfig& config) {
  config.validate();
  if (!(a0 > 0.0)) throw std::invalid_argument("Hurwitz parameter a must be positive");
  if (std::abs(s - 1.0) <= 1e-10) throw std::domain_error("zeta_em: s too close to the pole at 1");
  const int M = config.M;
  if (!(s.real() > -M)) throw std::domain_error("zeta_em: needs Re(s) > -M");
  const int shift = direct_head_length(s, a0);
  CompensatedComplexSum head;
  for (int n = 0; n < shift; ++n) head.add(std::exp(-s * std::log(a0 + n)));
  const double a = a0 + shift;

  const BernoulliTable& table = default_bernoulli_table();
  const double log_a = std::log(a);
  auto a_pow = [&](const Complex& e) { return std::exp(-e * log_a); };  // a^{-e}

  CompensatedComplexSum closed;
  closed.add(a_pow(s - 1.0) / (s - 1.0));
  closed.add(0.5 * a_pow(s));
  Complex rising(1.0, 0.0);
  for (int k = 1; k <= M; ++k) {
    rising *= s + static_cast<double>(k - 1);
    const double bk = to_double(table.number(static_cast<std::size_t>(k + 1)));
    if (bk == 0.0) continue;
    closed.add(bk / factorial_d(k + 1) * rising * a_pow(s + static_cast<double>(k)));
  }
  const Complex rising_m1 = rising * (s + static_cast<double>(M));  // (s)_{M+1}

  // remainder integral int_1^inf B~_{M+1}(x) (x+a-1)^{-w} dx, w = s + M + 1
  const Complex w = s + static_cast<double>(M + 1);
  const std::vector<double> bpoly = bernoulli_poly_coeffs(static_cast<std::size_t>(M + 1));
  const double bmax = max_abs_bernoulli_poly(bpoly);
  const double sigma = s.real() + M;  // decay exponent of the integrated bound
  const double x_cap = std::max(64.0, 4.0 * std::ceil(std::abs(w)));
  // the integral is multiplied by (s)_{M+1}/(M+1)!, so the cutoff is scaled by it
  const double tail_tol = config.cutoff_tol * factorial_d(M + 1) / std::max(std::abs(rising_m1), 1e-300);
  double x_end = std::ceil(std::pow(bmax / (sigma * tail_tol), 1.0 / sigma) + 1.0 - a);
  const bool needs_tail = !(x_end <= x_cap);
  if (needs_tail) x_end = x_cap;
  x_end = std::max(x_end, 2.0);

  const GaussLegendreRule rule(config.quad_points);
  const double rel = std::max(1e-14, 1e-15 * std::abs(w) * std::log(x_end + a));
  CompensatedComplexSum integral;
  const int panels = static_cast<int>(x_end) - 1;
  for (int j = 1; j <= panels; ++j) {
    auto f = [&](double x) {
      return poly_eval(bpoly, x - j) * std::exp(-w * std::log(x + a - 1.0));
    };
    integral.add(integrate_scaled(f, j, j + 1.0, rel, rule, 1e-300));
  }
  Complex rem = integral.value();
  if (needs_tail) rem += em_tail(M + 1, w, x_end + a - 1.0, tail_tol);

  const Complex value = head.value() + closed.value() - rising_m1 / factorial_d(M + 1) * rem;
  if (!is_finite(value)) throw std::overflow_error("zeta_em overflowed");
  return value;
}

}  // namespace detail

/// Right side of the finite Euler-Maclaurin formula for sum_{n=1}^N f(n):
/// int_1^N f + (f(1)+f(N))/2 + sum_{k=1}^M B_{k+1}/(k+1)! (f^(k)(N) - f^(k)(1))
///   - (-1)^{M+1}/(M+1)! int_1^N B~_{M+1}(x) f^(M+1)(x) dx.
///
/// `f(k, x)` must return the k-th derivative at x for k = 0..M+1.
template <typename F>
Complex euler_maclaurin_sum(F&& f, int N, const EMConfig& config = {}) {
  config.validate();
  if (N < 1) throw std::invalid_argument("euler_maclaurin_sum: N must be >= 1");
  const int M = config.M;
  const BernoulliTable& table = default_bernoulli_table();
  const GaussLegendreRule rule(config.quad_points);

  CompensatedComplexSum acc;
  for (int j = 1; j < N; ++j) {
    acc.add(integrate_scaled([&](double x) { return Complex(f(0, x)); }, j, j + 1.0, 1e-14, rule, 1e-300));
  }
  acc.add(0.5 * (Complex(f(0, 1.0)) + Complex(f(0, static_cast<double>(N)))));
  for (int k = 1; k <= M; ++k) {
    const double bk = to_double(table.number(static_cast<std::size_t>(k + 1)));
    if (bk == 0.0) continue;
    acc.add(bk / detail::factorial_d(k + 1) * (Complex(f(k, static_cast<double>(N))) - Complex(f(k, 1.0))));
  }
  const std::vector<double> bpoly = bernoulli_poly_coeffs(static_cast<std::size_t>(M + 1));
  CompensatedComplexSum rem;
  for (int j = 1; j < N; ++j) {
    auto g = [&](double x) { return detail::poly_eval(bpoly, x - j) * Complex(f(M + 1, x)); };
    rem.add(integrate_scaled(g, j, j + 1.0, 1e-14, rule, 1e-300));
  }
  const double sign = ((M + 1) % 2 == 0) ? 1.0 : -1.0;
  acc.add(-sign / detail::factorial_d(M + 1) * rem.value());
  return acc.value();
}

/// Riemann zeta continued to Re(s) > -M by Euler-Maclaurin summation.
inline Complex zeta_em(const Complex& s, const EMConfig& config = {}) { return detail::hurwitz_em_impl(s, 1.0, config); }

/// Hurwitz zeta sum_{n>=0} (n+a)^{-s}, summed from n = 1 with f(x) = (x+a-1)^{-s}.
inline Complex hurwitz_em(const Complex& s, double a, const EMConfig& config = {}) {
  return detail::hurwitz_em_impl(s, a, config);
}

}  // namespace qzeta
