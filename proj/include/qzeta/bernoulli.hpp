#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qzeta/double_double.hpp"
#include "qzeta/types.hpp"

namespace qzeta {

using BigInt = boost::multiprecision::cpp_int;
/// Exact fraction, always in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt c = 1;
  for (unsigned j = 0; j < k; ++j) c = c * (n - j) / (j + 1);
  return c;
}

/// Bernoulli numbers B_0..B_K with B_1 = +1/2, i.e. the coefficients of
/// t e^t / (e^t - 1).
class BernoulliTable {
 public:
  static constexpr std::size_t kDefaultCapacity = 64;

  explicit BernoulliTable(std::size_t capacity = kDefaultCapacity) : values_(capacity + 1) {
    // sum_{j=0}^{n} binom(n+1, j) b_j = 0 for the t/(e^t-1) numbers b_j
    values_[0] = 1;
    for (std::size_t n = 1; n <= capacity; ++n) {
      if (n >= 3 && n % 2 == 1) {
        values_[n] = 0;
        continue;
      }
      Rational acc = 0;
      for (std::size_t j = 0; j < n; ++j) {
        acc += Rational(binomial(static_cast<unsigned>(n + 1), static_cast<unsigned>(j))) * values_[j];
      }
      values_[n] = -acc / Rational(n + 1);
    }
    values_[1] = -values_[1];  // store the te^t/(e^t-1) convention
  }

  std::size_t capacity() const noexcept { return values_.size() - 1; }

  /// B_k with B_1 = +1/2.
  const Rational& number(std::size_t k) const {
    check(k);
    return values_[k];
  }

  /// b_k of t/(e^t - 1); differs from number(k) only at k = 1.
  Rational alternate(std::size_t k) const {
    check(k);
    return k == 1 ? Rational(-values_[1]) : values_[k];
  }

  const std::vector<Rational>& values() const noexcept { return values_; }

 private:
  void check(std::size_t k) const {
    if (k >= values_.size()) {
      throw std::out_of_range("Bernoulli index " + std::to_string(k) + " beyond table capacity " +
                              std::to_string(capacity()));
    }
  }

  std::vector<Rational> values_;
};

inline const BernoulliTable& default_bernoulli_table() {
  static const BernoulliTable table;
  return table;
}

inline const Rational& bernoulli_number(std::size_t k) { return default_bernoulli_table().number(k); }

/// Coefficients c_i of B_k(x) = sum_i c_i x^i, as doubles.
inline std::vector<double> bernoulli_poly_coeffs(std::size_t k, const BernoulliTable& table = default_bernoulli_table()) {
  std::vector<double> c(k + 1);
  for (std::size_t j = 0; j <= k; ++j) {
    // binom(k, j) b_j x^{k-j}
    c[k - j] = to_double(Rational(binomial(static_cast<unsigned>(k), static_cast<unsigned>(j))) * table.alternate(j));
  }
  return c;
}

/// Bernoulli polynomial B_k(x) from t e^{xt} / (e^t - 1); B_1(x) = x - 1/2.
/// Horner runs in double-double: near x = 1 the terms reach ~1e10 at k = 31
/// while the value is O(1).
inline Complex bernoulli_poly(std::size_t k, const Complex& x) {
  const BernoulliTable& table = default_bernoulli_table();
  const ComplexDD xd(x);
  ComplexDD acc;
  for (std::size_t i = k + 1; i-- > 0;) {
    // coefficient of x^i is binom(k, i) b_{k-i}
    const Rational c = Rational(binomial(static_cast<unsigned>(k), static_cast<unsigned>(i))) * table.alternate(k - i);
    const double hi = to_double(c);
    acc = acc * xd + ComplexDD(DoubleDouble(hi, to_double(c - Rational(hi))));
  }
  return acc.to_complex();
}

/// B_k(x - floor(x)).
inline double periodic_bernoulli(std::size_t k, double x) {
  if (k < 2) throw std::invalid_argument("periodic_bernoulli: k must be >= 2");
  const double frac = x - std::floor(x);
  return bernoulli_poly(k, Complex(frac, 0.0)).real();
}

/// -k! * sum_{0<|n|<=N} e^{2 pi i n x} / (2 pi i n)^k, summed as real pairs
/// (n, -n): each pair contributes 2 cos(2 pi n x - k pi/2) / (2 pi n)^k.
/// `Real` may be long double where the truncation error sits below binary64
/// resolution.
template <typename Real>
Real fourier_partial_sum_as(std::size_t k, Real x, std::size_t terms) {
  if (k < 2) throw std::invalid_argument("fourier_partial_sum: k must be >= 2");
  const Real pi = std::acos(Real(-1));
  Real factorial = 1;
  for (std::size_t j = 2; j <= k; ++j) factorial *= static_cast<Real>(j);
  const Real frac = x - std::floor(x);
  const Real shift = pi / 2 * static_cast<Real>(k % 4);
  Real acc = 0;
  // smallest terms first
  for (std::size_t n = terms; n >= 1; --n) {
    const Real nx = static_cast<Real>(n) * frac;
    const Real phase = 2 * pi * (nx - std::floor(nx)) - shift;
    const Real w = 2 * pi * static_cast<Real>(n);
    Real wk = w;
    for (std::size_t j = 1; j < k; ++j) wk *= w;
    acc += 2 * std::cos(phase) / wk;
  }
  return -factorial * acc;
}

inline double fourier_partial_sum(std::size_t k, double x, std::size_t terms) {
  return fourier_partial_sum_as<double>(k, x, terms);
}

}  // namespace qzeta
