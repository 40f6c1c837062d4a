#pragma once

// q-Bernoulli numbers B_m(q) = -m zeta_q(1-m) and their generating function
// F_q(t) = sum_m B_m(q) t^m / m!.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qzeta/bernoulli.hpp"
#include "qzeta/detail/near_one.hpp"
#include "qzeta/double_double.hpp"
#include "qzeta/q_zeta.hpp"
#include "qzeta/types.hpp"

namespace qzeta {

inline constexpr std::size_t kMaxQBernoulliOrder = 30;

/// Power series truncated at t^order, stored as coefficients of t^m / m!.
struct TruncatedPowerSeries {
  std::vector<Complex> coeffs;

  explicit TruncatedPowerSeries(std::size_t order = 0) : coeffs(order + 1, Complex(0.0, 0.0)) {}

  std::size_t order() const noexcept { return coeffs.size() - 1; }

  /// e^t
  static TruncatedPowerSeries exponential(std::size_t order) {
    TruncatedPowerSeries e(order);
    for (auto& c : e.coeffs) c = 1.0;
    return e;
  }

  /// t e^t, whose t^n/n! coefficient is n.
  static TruncatedPowerSeries t_exponential(std::size_t order) {
    TruncatedPowerSeries e(order);
    for (std::size_t n = 0; n <= order; ++n) e.coeffs[n] = static_cast<double>(n);
    return e;
  }

  /// G(t) -> G(c t).
  TruncatedPowerSeries scaled(const Complex& c) const {
    TruncatedPowerSeries out(order());
    Complex power(1.0, 0.0);
    for (std::size_t n = 0; n <= order(); ++n) {
      out.coeffs[n] = coeffs[n] * power;
      power *= c;
    }
    return out;
  }

  friend TruncatedPowerSeries operator+(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b) {
    check_orders(a, b);
    TruncatedPowerSeries out(a.order());
    for (std::size_t n = 0; n <= a.order(); ++n) out.coeffs[n] = a.coeffs[n] + b.coeffs[n];
    return out;
  }

  friend TruncatedPowerSeries operator-(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b) {
    check_orders(a, b);
    TruncatedPowerSeries out(a.order());
    for (std::size_t n = 0; n <= a.order(); ++n) out.coeffs[n] = a.coeffs[n] - b.coeffs[n];
    return out;
  }

  /// Cauchy product; in the t^n/n! basis the convolution weights are binom(n, m).
  friend TruncatedPowerSeries operator*(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b) {
    check_orders(a, b);
    TruncatedPowerSeries out(a.order());
    for (std::size_t n = 0; n <= a.order(); ++n) {
      CompensatedComplexSum acc;
      for (std::size_t m = 0; m <= n; ++m) {
        const double w = binomial(static_cast<unsigned>(n), static_cast<unsigned>(m)).convert_to<double>();
        acc.add(w * a.coeffs[m] * b.coeffs[n - m]);
      }
      out.coeffs[n] = acc.value();
    }
    return out;
  }

 private:
  static void check_orders(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b) {
    if (a.order() != b.order()) throw std::invalid_argument("TruncatedPowerSeries: order mismatch");
  }
};

namespace detail {

/// (q-1)^{1-m} { sum_{r=1}^m (-1)^r binom(m,r) r/(q^r - 1) + 1/log q } in double-double.
inline double q_bernoulli_dd(std::size_t m, const QParam& q) {
  const DoubleDouble q_dd(q.value());
  DoubleDouble braces = DoubleDouble(1.0) / log(q_dd);
  DoubleDouble q_pow_r(1.0);
  for (std::size_t r = 1; r <= m; ++r) {
    q_pow_r = q_pow_r * q_dd;
    const double sign = (r % 2 == 0) ? 1.0 : -1.0;
    braces += binomial_dd(m, r) * (sign * static_cast<double>(r)) / (q_pow_r - 1.0);
  }
  const DoubleDouble q_minus_one = q_dd - 1.0;
  const double value = (braces / pow(q_minus_one, static_cast<long long>(m) - 1)).to_double();
  if (!std::isfinite(value)) throw std::overflow_error("q_bernoulli overflowed");
  return value;
}

}  // namespace detail

/// B_m(q); B_0(q) = (q-1)/log q.
inline double q_bernoulli(std::size_t m, const QParam& q) {
  if (m == 0) return residue_at_one(q);
  if (auto v = detail::q_bernoulli_near_one(m, q.log(), q.h())) return *v;
  return detail::q_bernoulli_dd(m, q);
}

/// sum_{m=0}^n (-1)^m binom(n,m) q^m B_m(q) - (-1)^n B_n(q) - [n == 1]
inline double recursion_residual(std::size_t n, const QParam& q) {
  if (n > kMaxQBernoulliOrder) throw std::invalid_argument("recursion_residual: n must be <= 30");
  DoubleDouble acc(0.0);
  DoubleDouble q_pow(1.0);
  for (std::size_t m = 0; m <= n; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    acc += detail::binomial_dd(n, m) * q_pow * (sign * q_bernoulli(m, q));
    q_pow = q_pow * q.value();
  }
  acc -= DoubleDouble((n % 2 == 0) ? 1.0 : -1.0) * q_bernoulli(n, q);
  if (n == 1) acc -= 1.0;
  return acc.to_double();
}

/// F_q(t) through t^order.
inline TruncatedPowerSeries generating_series(const QParam& q, std::size_t order) {
  if (order > kMaxQBernoulliOrder) throw std::invalid_argument("generating_series: order must be <= 30");
  TruncatedPowerSeries f(order);
  for (std::size_t m = 0; m <= order; ++m) f.coeffs[m] = q_bernoulli(m, q);
  return f;
}

/// |coefficient of t^n/n!| in F_q(qt) - e^t F_q(t) + t e^t, n = 0..order.
inline std::vector<double> functional_equation_residual(const QParam& q, std::size_t order) {
  if (order > kMaxQBernoulliOrder) {
    throw std::invalid_argument("functional_equation_residual: order must be <= 30");
  }
  const TruncatedPowerSeries f = generating_series(q, order);
  const TruncatedPowerSeries r = f.scaled(q.value()) - TruncatedPowerSeries::exponential(order) * f +
                                 TruncatedPowerSeries::t_exponential(order);
  std::vector<double> out(order + 1);
  for (std::size_t n = 0; n <= order; ++n) out[n] = std::abs(r.coeffs[n]);
  return out;
}

}  // namespace qzeta
