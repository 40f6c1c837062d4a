#pragma once

// Expansions in L = log q of the closed forms at non-positive integers.
//
// Both closed forms are finite alternating sums whose leading (1-q)^m orders
// cancel exactly. Writing 1/(q^j - 1) through the Bernoulli generating function
// and summing over j collapses the low orders into Stirling numbers of the
// second kind:
//
//   zeta_q(-m; a) = (L/(1-q))^m * m! * sum_{k>m} B_k(1-a) S2(k, m+1) L^{k-m-1} / k!
//   B_m(q)        = (L/(q-1))^{m-1} (-1)^m m! * sum_{k>=m} b_k S2(k, m) L^{k-m} / k!
//
// with b_k the t/(e^t-1) Bernoulli numbers. The ratio of consecutive terms is
// about m|L|/(2 pi), so the series is used only while m|L| stays small.

#include <cmath>
#include <optional>
#include <vector>

#include "qzeta/bernoulli.hpp"

namespace qzeta::detail {

inline constexpr std::size_t kNearOneCapacity = 100;
inline constexpr double kNearOneMaxArgument = 2.0;  // (m+1)|L| bound for using the series

inline const BernoulliTable& near_one_bernoulli() {
  static const BernoulliTable table(kNearOneCapacity);
  return table;
}

/// S2(n, k) for n, k <= kNearOneCapacity.
inline const std::vector<std::vector<BigInt>>& stirling2_table() {
  static const std::vector<std::vector<BigInt>> table = [] {
    const std::size_t n_max = kNearOneCapacity;
    std::vector<std::vector<BigInt>> s(n_max + 1, std::vector<BigInt>(n_max + 1, 0));
    s[0][0] = 1;
    for (std::size_t n = 1; n <= n_max; ++n) {
      for (std::size_t k = 1; k <= n; ++k) s[n][k] = BigInt(k) * s[n - 1][k] + s[n - 1][k - 1];
    }
    return s;
  }();
  return table;
}

inline BigInt factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t j = 2; j <= n; ++j) f *= j;
  return f;
}

inline double bernoulli_poly_real(std::size_t k, double x, const BernoulliTable& table) {
  const std::vector<double> c = bernoulli_poly_coeffs(k, table);
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

/// sum_j c_j L^j with c_j supplied lazily; stops once two consecutive terms fall
/// below 1e-18 of the running sum. Returns nullopt if the coefficient source
/// runs out first.
template <typename Coeff>
std::optional<double> sum_power_series(Coeff&& coeff, double L, std::size_t max_j) {
  double acc = 0.0;
  double power = 1.0;
  int small = 0;
  for (std::size_t j = 0; j <= max_j; ++j) {
    const double term = coeff(j) * power;
    acc += term;
    small = (std::abs(term) <= 1e-18 * std::abs(acc)) ? small + 1 : 0;
    if (small >= 2) return acc;
    power *= L;
  }
  return std::nullopt;
}

/// zeta_q(-m; a) from the expansion above, or nullopt when it does not apply.
inline std::optional<double> hurwitz_nonpositive_near_one(std::size_t m, double a, double log_q, double h) {
  if (static_cast<double>(m + 1) * std::abs(log_q) > kNearOneMaxArgument) return std::nullopt;
  if (m + 2 > kNearOneCapacity) return std::nullopt;
  const auto& table = near_one_bernoulli();
  const auto& s2 = stirling2_table();
  const BigInt m_fact = factorial(m);
  BigInt k_fact = factorial(m + 1);
  auto coeff = [&](std::size_t j) {
    const std::size_t k = m + 1 + j;
    if (j > 0) k_fact *= k;
    const double bk = (a == 1.0) ? to_double(table.alternate(k)) : bernoulli_poly_real(k, 1.0 - a, table);
    return bk * to_double(Rational(m_fact * s2[k][m + 1], k_fact));
  };
  const auto series = sum_power_series(coeff, log_q, kNearOneCapacity - m - 1);
  if (!series) return std::nullopt;
  const double ratio = std::log1p(-h) / h;  // L / (1-q)
  return std::pow(ratio, static_cast<double>(m)) * *series;
}

/// B_m(q) from the expansion above (m >= 1), or nullopt when it does not apply.
inline std::optional<double> q_bernoulli_near_one(std::size_t m, double log_q, double h) {
  if (m == 0 || static_cast<double>(m) * std::abs(log_q) > kNearOneMaxArgument) return std::nullopt;
  if (m + 1 > kNearOneCapacity) return std::nullopt;
  const auto& table = near_one_bernoulli();
  const auto& s2 = stirling2_table();
  const BigInt m_fact = factorial(m);
  BigInt k_fact = m_fact;
  auto coeff = [&](std::size_t j) {
    const std::size_t k = m + j;
    if (j > 0) k_fact *= k;
    return to_double(table.alternate(k) * Rational(m_fact * s2[k][m], k_fact));
  };
  const auto series = sum_power_series(coeff, log_q, kNearOneCapacity - m);
  if (!series) return std::nullopt;
  const double ratio = -std::log1p(-h) / h;  // L / (q-1)
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(ratio, static_cast<double>(m) - 1.0) * *series;
}

}  // namespace qzeta::detail
