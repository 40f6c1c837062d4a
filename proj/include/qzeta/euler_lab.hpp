#pragma once

// Experiments around the q-zeta function: Euler's rational-function values of
// divergent alternating series, q -> 1 limits, the Eisenstein limit, the
// Lambert-type identity, the incomplete beta recursion, and numerical checks of
// the Euler-Maclaurin and Fourier forms of zeta_q.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qzeta/bernoulli.hpp"
#include "qzeta/num_kernel.hpp"
#include "qzeta/q_zeta.hpp"
#include "qzeta/quadrature.hpp"
#include "qzeta/types.hpp"

namespace qzeta {

// ---------------------------------------------------------------------------
// Euler's alternating series

/// Integer polynomial, ascending coefficients, no trailing zeros.
struct IntPolynomial {
  std::vector<BigInt> coeffs;

  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> c) : coeffs(std::move(c)) { normalize(); }

  void normalize() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }

  bool is_zero() const noexcept { return coeffs.empty(); }
  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }

  BigInt coeff(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : BigInt(0); }

  IntPolynomial derivative() const {
    std::vector<BigInt> d;
    for (std::size_t i = 1; i < coeffs.size(); ++i) d.push_back(coeffs[i] * i);
    return IntPolynomial(std::move(d));
  }

  Rational evaluate(const Rational& x) const {
    Rational acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + Rational(coeffs[i]);
    return acc;
  }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs == b.coeffs; }
};

inline constexpr std::size_t kMaxEulerOrder = 30;

/// N_m with sum_{n>=0} (-1)^n (n+1)^m x^n = N_m(x) / (1+x)^{m+1}.
///
/// Applying d/dx x to both sides gives
///   N_{m+1} = (1+x)(N_m + x N_m') - (m+1) x N_m,  N_0 = 1.
inline IntPolynomial euler_numerator(std::size_t m) {
  if (m > kMaxEulerOrder) throw std::invalid_argument("euler_numerator: m must be <= 30");
  IntPolynomial n(std::vector<BigInt>{1});
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<BigInt> next(n.coeffs.size() + 1, 0);
    for (std::size_t i = 0; i < n.coeffs.size(); ++i) {
      // (1+x)(N + xN') contributes (1+i) c_i to x^i and x^{i+1}
      const BigInt g = n.coeffs[i] * (i + 1);
      next[i] += g;
      next[i + 1] += g;
      next[i + 1] -= n.coeffs[i] * (k + 1);
    }
    n = IntPolynomial(std::move(next));
  }
  return n;
}

/// First `terms` coefficients of N(x) / (1+x)^{power}, exactly.
inline std::vector<BigInt> rational_series_expansion(const IntPolynomial& numer, std::size_t power,
                                                     std::size_t terms) {
  // (1+x)^{-p} = sum_n (-1)^n binom(p+n-1, n) x^n
  std::vector<BigInt> inv(terms);
  for (std::size_t n = 0; n < terms; ++n) {
    const BigInt c = (power == 0) ? BigInt(n == 0 ? 1 : 0)
                                  : binomial(static_cast<unsigned>(power + n - 1), static_cast<unsigned>(n));
    inv[n] = (n % 2 == 0) ? c : BigInt(-c);
  }
  std::vector<BigInt> out(terms, 0);
  for (std::size_t i = 0; i < numer.coeffs.size() && i < terms; ++i) {
    for (std::size_t n = 0; n + i < terms; ++n) out[n + i] += numer.coeffs[i] * inv[n];
  }
  return out;
}

/// Euler's value of 1^m - 2^m + 3^m - ...: N_m(1) / 2^{m+1}.
inline Rational tilde_zeta_neg(std::size_t m) {
  const IntPolynomial n = euler_numerator(m);
  return n.evaluate(Rational(1)) / Rational(BigInt(1) << (m + 1));
}

/// zeta(-m) through the alternating value and (1 - 2^{1+m}).
inline Rational zeta_neg_via_alt(std::size_t m) {
  if (m > kMaxEulerOrder) throw std::invalid_argument("zeta_neg_via_alt: m must be <= 30");
  const BigInt factor = BigInt(1) - (BigInt(1) << (m + 1));
  return tilde_zeta_neg(m) / Rational(factor);
}

// ---------------------------------------------------------------------------
// q -> 1 limits

/// q = 1 - 2^{-k}/10, k = 0..5.
inline std::vector<QParam> default_q_grid() {
  std::vector<QParam> grid;
  for (int k = 0; k <= 5; ++k) grid.push_back(QParam::from_h(std::ldexp(0.1, -k)));
  return grid;
}

inline constexpr int kDefaultLimitOrder = 4;

/// Raised when a grid point lands on the pole lattice; carries that q.
class GridPoleError : public PoleError {
 public:
  GridPoleError(const PoleError& e, double q)
      : PoleError(std::string(e.what()) + " (at q = " + std::to_string(q) + ")", e.pole()), q_(q) {}
  double q() const noexcept { return q_; }

 private:
  double q_;
};

namespace detail {

template <typename F>
ExtrapolationResult extrapolate_over(const std::vector<QParam>& grid, int order, F&& value_at) {
  if (grid.size() < 4) throw std::invalid_argument("limit extrapolation needs at least 4 grid points");
  std::vector<ExtrapolationSample> samples;
  samples.reserve(grid.size());
  for (const QParam& q : grid) samples.push_back({q.h(), value_at(q)});
  return richardson_extrapolate(std::move(samples), std::min<int>(order, static_cast<int>(grid.size()) - 1));
}

}  // namespace detail

/// lim_{q -> 1} zeta_q(-m), extrapolated in h = 1 - q.
inline ExtrapolationResult theorem1_limit(std::size_t m, const std::vector<QParam>& grid = default_q_grid(),
                                          int order = kDefaultLimitOrder) {
  return detail::extrapolate_over(grid, order, [&](const QParam& q) { return Complex(zeta_q_nonpositive(m, q)); });
}

/// lim_{q -> 1} zeta_q(s), extrapolated in h = 1 - q.
inline ExtrapolationResult theorem2_limit(const Complex& s, const std::vector<QParam>& grid = default_q_grid(),
                                          int order = kDefaultLimitOrder, const EvalPolicy& policy = {}) {
  return detail::extrapolate_over(grid, order, [&](const QParam& q) {
    try {
      return zeta_q(s, q, policy).value;
    } catch (const PoleError& e) {
      throw GridPoleError(e, q.value());
    }
  });
}

namespace detail {

/// sum_{n>=1} c(n) q^n / (1 - q^n) for c(n) growing like n^degree, stopped by a
/// geometric tail bound once the terms decrease.
template <typename Coeff>
double lambert_sum(Coeff&& c, int degree, const QParam& q, const EvalPolicy& policy) {
  const double L = q.log();
  CompensatedSum acc;
  for (std::uint64_t n = 1; n <= policy.max_terms; ++n) {
    const double nd = static_cast<double>(n);
    const double term = c(n) * std::exp(nd * L) / -std::expm1(nd * L);
    acc.add(term);
    const double rho = std::pow((nd + 1.0) / nd, degree) * q.value();
    if (rho < 1.0 && n > 1 && term != 0.0) {
      const double tail = std::abs(term) * rho / (1.0 - rho);
      if (tail <= policy.tol * std::max(1.0, std::abs(acc.value()))) return acc.value();
    }
  }
  throw ConvergenceError("Lambert series did not converge within max_terms");
}

}  // namespace detail

/// (1-q)^k sum_{n>=1} n^{k-1} q^n / (1 - q^n).
inline double eisenstein_sample(int k, const QParam& q, const EvalPolicy& policy = {}) {
  if (k < 2) throw std::invalid_argument("eisenstein_sample: k must be >= 2");
  policy.validate();
  const double sum = detail::lambert_sum([&](std::uint64_t n) { return std::pow(static_cast<double>(n), k - 1); },
                                         k - 1, q, policy);
  return std::pow(q.h(), k) * sum;
}

/// Eisenstein samples extrapolated to q = 1; the limit is (k-1)! zeta(k).
inline ExtrapolationResult eisenstein_limit(int k, const std::vector<double>& h_grid = {0.02, 0.01, 0.005, 0.0025},
                                            int order = 3, const EvalPolicy& policy = {}) {
  std::vector<QParam> grid;
  for (double h : h_grid) grid.push_back(QParam::from_h(h));
  return detail::extrapolate_over(grid, order, [&](const QParam& q) { return Complex(eisenstein_sample(k, q, policy)); });
}

/// |zeta_q(k) - (1-q)^k sum_{n>=1} binom(n, k-1) q^n / (1 - q^n)|.
inline double lambert_identity_residual(int k, const QParam& q, const EvalPolicy& policy = {}) {
  if (k < 2) throw std::invalid_argument("lambert_identity_residual: k must be >= 2");
  policy.validate();
  auto binom = [&](std::uint64_t n) {
    if (n + 1 < static_cast<std::uint64_t>(k)) return 0.0;  // binom(n, k-1) = 0 for n <= k-2
    double c = 1.0;
    for (int j = 1; j <= k - 1; ++j) c = c * static_cast<double>(n - static_cast<std::uint64_t>(k - 1) + j) / j;
    return c;
  };
  const double lambert = std::pow(q.h(), k) * detail::lambert_sum(binom, k - 1, q, policy);
  const Complex z = zeta_q(Complex(k, 0.0), q, policy).value;
  return std::abs(z - lambert);
}

// ---------------------------------------------------------------------------
// Incomplete beta

/// b_t(alpha, beta) = int_0^t u^{alpha-1} (1-u)^{beta-1} du.
struct IncompleteBetaQuery {
  double t = 0.5;
  Complex alpha{1.0, 0.0};
  Complex beta{1.0, 0.0};
};

namespace detail {

inline constexpr double kBetaSeriesCutoff = 1.0 / 16.0;

/// int_0^u v^{alpha-1}(1-v)^{beta-1} dv = sum_k (1-beta)_k/k! u^{alpha+k}/(alpha+k), u < 1.
inline Complex incomplete_beta_series(double u, const Complex& alpha, const Complex& beta) {
  const Complex u_alpha = std::exp(alpha * std::log(u));
  Complex coeff(1.0, 0.0);
  double u_pow = 1.0;
  CompensatedComplexSum acc;
  for (int k = 0; k < 5000; ++k) {
    const Complex term = coeff * u_pow / (alpha + static_cast<double>(k));
    acc.add(term);
    if (k > 2 && std::abs(term) <= 1e-18 * std::abs(acc.value())) return u_alpha * acc.value();
    coeff *= (1.0 - beta + static_cast<double>(k)) / static_cast<double>(k + 1);
    u_pow *= u;
  }
  throw ConvergenceError("incomplete beta series did not converge");
}

}  // namespace detail

/// Quadrature of the defining integral: geometric panels [t 2^{-k-1}, t 2^{-k}]
/// down to 1/16, then the binomial series on the last stretch to 0.
inline Complex incomplete_beta(const IncompleteBetaQuery& query, double tol = 1e-14) {
  const double t = query.t;
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("incomplete_beta: t must lie in (0, 1)");
  if (!(query.alpha.real() > 0.0)) throw std::invalid_argument("incomplete_beta: needs Re(alpha) > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("incomplete_beta: tol must be positive");

  const Complex am1 = query.alpha - 1.0;
  const Complex bm1 = query.beta - 1.0;
  auto f = [&](double u) { return std::exp(am1 * std::log(u) + bm1 * std::log1p(-u)); };

  std::vector<double> edges{t};
  while (edges.back() > detail::kBetaSeriesCutoff) edges.push_back(0.5 * edges.back());
  const double floor = 0.01 * tol / static_cast<double>(edges.size());
  // the phase (alpha-1) log u carries an absolute error of about |alpha| eps
  const double rel = std::max(1e-14, 1e-15 * (std::abs(query.alpha) + std::abs(query.beta)));

  static const GaussLegendreRule rule(16);
  CompensatedComplexSum acc;
  acc.add(detail::incomplete_beta_series(edges.back(), query.alpha, query.beta));
  for (std::size_t i = edges.size() - 1; i > 0; --i) {
    acc.add(integrate_scaled(f, edges[i], edges[i - 1], rel, rule, floor));
  }
  const Complex v = acc.value();
  if (!is_finite(v)) throw std::overflow_error("incomplete_beta overflowed");
  return v;
}

namespace detail {

/// (1-beta)_{M-1} / (alpha)_{M-1}, throwing on a vanishing denominator.
inline Complex beta_recursion_coefficient(const IncompleteBetaQuery& query, int M) {
  Complex c(1.0, 0.0);
  for (int j = 0; j < M - 1; ++j) {
    const Complex den = query.alpha + static_cast<double>(j);
    if (std::abs(den) == 0.0) throw std::domain_error("incomplete_beta_recursion: zero Pochhammer denominator");
    c *= (1.0 - query.beta + static_cast<double>(j)) / den;
  }
  return c;
}

/// Upper bound of |remainder term| at depth M using
/// int_0^t u^{c-1}(1-u)^{d-1} du <= t^c/c * max(1, (1-t)^{d-1}).
inline double beta_remainder_bound(const IncompleteBetaQuery& query, int M) {
  const double c = query.alpha.real() + M - 1;
  if (!(c > 0.0)) return std::numeric_limits<double>::infinity();
  const double d = query.beta.real() - M + 1;
  const double t = query.t;
  const double integral = std::exp(c * std::log(t)) / c * std::max(1.0, std::exp((d - 1.0) * std::log1p(-t)));
  return std::abs(beta_recursion_coefficient(query, M)) * integral;
}

}  // namespace detail

/// Integration by parts M-1 times:
///   sum_{k=1}^{M-1} (-1)^{k-1} (1-beta)_{k-1}/(alpha)_k t^{alpha+k-1}(1-t)^{beta-k}
///   + (-1)^{M-1} (1-beta)_{M-1}/(alpha)_{M-1} b_t(alpha+M-1, beta-M+1).
/// The remainder integral is skipped when its bound is below tol/10, which
/// extends b_t to Re(alpha) <= 0.
inline Complex incomplete_beta_recursion(const IncompleteBetaQuery& query, int M, double tol = 1e-14) {
  if (M < 2) throw std::invalid_argument("incomplete_beta_recursion: M must be >= 2");
  const double t = query.t;
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("incomplete_beta_recursion: t must lie in (0, 1)");
  const double log_t = std::log(t);
  const double log_1mt = std::log1p(-t);

  CompensatedComplexSum acc;
  Complex coeff(1.0, 0.0);  // (1-beta)_{k-1} / (alpha)_{k-1}
  for (int k = 1; k <= M - 1; ++k) {
    const Complex den = query.alpha + static_cast<double>(k - 1);
    if (std::abs(den) == 0.0) throw std::domain_error("incomplete_beta_recursion: zero Pochhammer denominator");
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    const Complex boundary =
        std::exp((query.alpha + static_cast<double>(k - 1)) * log_t + (query.beta - static_cast<double>(k)) * log_1mt);
    acc.add(sign * coeff / den * boundary);
    coeff *= (1.0 - query.beta + static_cast<double>(k - 1)) / den;
  }
  // coeff now (1-beta)_{M-1} / (alpha)_{M-1}
  if (detail::beta_remainder_bound(query, M) > 0.1 * tol) {
    const double scale = std::max(std::abs(coeff), 1e-300);
    const IncompleteBetaQuery shifted{t, query.alpha + static_cast<double>(M - 1), query.beta - static_cast<double>(M - 1)};
    const double sign = ((M - 1) % 2 == 0) ? 1.0 : -1.0;
    acc.add(sign * coeff * incomplete_beta(shifted, tol / scale));
  }
  const Complex v = acc.value();
  if (!is_finite(v)) throw std::overflow_error("incomplete_beta_recursion overflowed");
  return v;
}

/// Smallest depth whose remainder can be skipped at `tol`; otherwise the depth
/// with the smallest remainder bound among those with a convergent integral.
inline int choose_recursion_depth(const IncompleteBetaQuery& query, double tol, int max_depth = 64) {
  int best = -1;
  double best_bound = std::numeric_limits<double>::infinity();
  for (int M = 2; M <= max_depth; ++M) {
    double bound;
    try {
      bound = detail::beta_remainder_bound(query, M);
    } catch (const std::domain_error&) {
      continue;
    }
    if (bound <= 0.1 * tol) return M;
    if (bound < best_bound) {
      best_bound = bound;
      best = M;
    }
  }
  if (best < 0) throw std::domain_error("incomplete_beta_recursion: no usable recursion depth");
  return best;
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin and Fourier forms of zeta_q

namespace detail {

inline void require_convergent_region(const Complex& s, const char* who) {
  if (!(s.real() > 1.0)) throw std::domain_error(std::string(who) + ": needs Re(s) > 1");
}

/// q^{s-1}/(s-1) (q-1)/log q + q^{s-1}/2 + (q^{s-1}/12)(log q/(q-1))(s-1+q)
inline Complex zq_closed_terms(const Complex& s, const QParam& q) {
  const double L = q.log();
  const double qm1 = q.value() - 1.0;
  const Complex qs1 = std::exp((s - 1.0) * L);
  return qs1 / (s - 1.0) * (qm1 / L) + 0.5 * qs1 + qs1 / 12.0 * (L / qm1) * (s - 1.0 + q.value());
}

}  // namespace detail

/// Right side of the M = 1 Euler-Maclaurin form of zeta_q(s):
///   closed terms - (1-q)^s/2 int_1^inf B~_2(x) f''(x) dx,
///   f''(x) = (log q)^2 q^{x(s-1)} (s(s+1) - 3s(1-q^x) + (1-q^x)^2) / (1-q^x)^{s+2}.
inline Complex zqeul_rhs(const Complex& s, const QParam& q, double tol = 1e-13) {
  detail::require_convergent_region(s, "zqeul_rhs");
  const double L = q.log();
  auto fpp = [&](double x) {
    const double v = -std::expm1(x * L);  // 1 - q^x
    const Complex poly = s * (s + 1.0) - 3.0 * s * v + v * v;
    return L * L * std::exp(x * (s - 1.0) * L - (s + 2.0) * std::log(v)) * poly;
  };
  static const GaussLegendreRule rule(16);
  const double rho = std::exp((s.real() - 1.0) * L);  // per-unit decay of |f''|
  CompensatedComplexSum integral;
  for (int j = 1; j < 1'000'000; ++j) {
    auto g = [&](double x) {
      const double u = x - j;
      return (u * u - u + 1.0 / 6.0) * fpp(x);
    };
    integral.add(integrate_scaled(g, j, j + 1.0, 1e-14, rule, 1e-300));
    const double tail = std::abs(fpp(j + 1.0)) / 6.0 * 2.0 / (1.0 - rho);
    if (tail * std::abs(std::exp(s * std::log(q.h()))) < 1e-3 * tol) break;
  }
  const Complex pref = std::exp(s * std::log(q.h())) / 2.0;
  return detail::zq_closed_terms(s, q) - pref * integral.value();
}

/// |zeta_q(s) - zqeul_rhs(s)|.
inline double verify_zqeul(const Complex& s, const QParam& q, double tol = 1e-13) {
  const Complex lhs = zeta_q(s, q).value;
  return std::abs(lhs - zqeul_rhs(s, q, tol));
}

inline constexpr int kDefaultFourierTerms = 200;

/// Right side of the Fourier form of zeta_q(s) with 0 < |n| <= N:
///   closed terms - (1-q)^s log q sum_n (2 pi i n)^{-2}
///     { s(s+1) b_q(a_n, -s-1) - 3s b_q(a_n, -s) + b_q(a_n, 1-s) },  a_n = s-1+n delta.
inline Complex zqbq_rhs(const Complex& s, const QParam& q, int N = kDefaultFourierTerms, double tol = 1e-13) {
  detail::require_convergent_region(s, "zqbq_rhs");
  if (N < 1) throw std::invalid_argument("zqbq_rhs: N must be >= 1");
  const Complex delta = q.delta();
  auto b = [&](const Complex& alpha, const Complex& beta) {
    const IncompleteBetaQuery query{q.value(), alpha, beta};
    return incomplete_beta_recursion(query, choose_recursion_depth(query, tol), tol);
  };
  CompensatedComplexSum sum;
  for (int n = N; n >= 1; --n) {
    for (int sign : {1, -1}) {
      const double nn = sign * n;
      const Complex alpha = s - 1.0 + nn * delta;
      const Complex braces = s * (s + 1.0) * b(alpha, -s - 1.0) - 3.0 * s * b(alpha, -s) + b(alpha, 1.0 - s);
      const double two_pi_n = 2.0 * M_PI * nn;
      sum.add(braces / -(two_pi_n * two_pi_n));  // (2 pi i n)^{-2}
    }
  }
  const Complex pref = std::exp(s * std::log(q.h())) * q.log();
  return detail::zq_closed_terms(s, q) - pref * sum.value();
}

/// |zeta_q(s) - zqbq_rhs(s, N)|.
inline double verify_zqbq(const Complex& s, const QParam& q, int N = kDefaultFourierTerms, double tol = 1e-13) {
  const Complex lhs = zeta_q(s, q).value;
  return std::abs(lhs - zqbq_rhs(s, q, N, tol));
}

}  // namespace qzeta
