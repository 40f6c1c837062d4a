#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qzeta/double_double.hpp"
#include "qzeta/types.hpp"

namespace qzeta {

/// 1 - exp(z) without cancellation for small |z|.
inline Complex one_minus_exp(const Complex& z) {
  const double a = z.real();
  const double b = z.imag();
  if (b == 0.0) return {-std::expm1(a), 0.0};
  const double half_sin = std::sin(0.5 * b);
  // exp(a)cos(b) - 1 = expm1(a)cos(b) - 2 sin^2(b/2)
  const double re = std::expm1(a) * std::cos(b) - 2.0 * half_sin * half_sin;
  const double im = std::exp(a) * std::sin(b);
  return {-re, -im};
}

/// q^z for real q in (0,1), taken as exp(z log q).
inline Complex q_pow(const QParam& q, const Complex& z) { return std::exp(z * q.log()); }

/// The q-integer [n]_q = (1 - q^n) / (1 - q).
inline Complex q_integer(const Complex& n, const QParam& q) { return one_minus_exp(n * q.log()) / q.h(); }

inline Complex q_integer(double n, const QParam& q) { return q_integer(Complex(n, 0.0), q); }

/// Rising factorial s(s+1)...(s+k-1); the empty product is 1.
inline Complex pochhammer(const Complex& s, std::uint64_t k) {
  Complex p(1.0, 0.0);
  for (std::uint64_t j = 0; j < k; ++j) p *= s + static_cast<double>(j);
  return p;
}

/// binom(s+r-1, r) = (s)_r / r!, built incrementally so r! never appears.
inline Complex binom_series_coeff(const Complex& s, std::uint64_t r) {
  Complex c(1.0, 0.0);
  for (std::uint64_t j = 0; j < r; ++j) c *= (s + static_cast<double>(j)) / static_cast<double>(j + 1);
  return c;
}

/// Neumaier's variant of Kahan summation. Uses only error-free additions, so
/// the result does not depend on FMA contraction (the build disables it).
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(const Complex& x) noexcept {
    re_.add(x.real());
    im_.add(x.imag());
  }

  Complex value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

/// Running complex sum kept in double-double.
class DoubleDoubleSum {
 public:
  void add(const Complex& x) noexcept {
    acc_.re = acc_.re + x.real();
    acc_.im = acc_.im + x.imag();
  }
  void add(const ComplexDD& x) noexcept { acc_ += x; }

  Complex value() const noexcept { return acc_.to_complex(); }
  const ComplexDD& exact() const noexcept { return acc_; }

 private:
  ComplexDD acc_{};
};

/// Compensated sum of a finite sequence. Throws std::overflow_error when the
/// result is not finite.
inline Complex compensated_sum(std::span<const Complex> terms) {
  CompensatedComplexSum acc;
  for (const Complex& t : terms) {
    if (!is_finite(t)) throw std::invalid_argument("compensated_sum: non-finite term");
    acc.add(t);
  }
  const Complex v = acc.value();
  if (!is_finite(v)) throw std::overflow_error("compensated_sum: overflow");
  return v;
}

/// Geometric step grid h_i = h0 * 2^-i, i = 0..n-1.
inline std::vector<double> geometric_h_grid(double h0, std::size_t n) {
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = std::ldexp(h0, -static_cast<int>(i));
  return h;
}

/// Polynomial extrapolation of value(h) to h = 0 by Neville's scheme.
///
/// Samples are sorted by decreasing h. The limit is the order-`order` entry
/// built from the `order + 1` smallest steps; the residual is the gap to the
/// neighbouring entry of the same column, or to the next-lower order when only
/// one entry of that column exists.
inline ExtrapolationResult richardson_extrapolate(std::vector<ExtrapolationSample> samples, int order) {
  if (order < 1) throw std::invalid_argument("richardson_extrapolate: order must be >= 1");
  if (samples.size() < static_cast<std::size_t>(order) + 1) {
    throw std::invalid_argument("richardson_extrapolate: need at least order+1 samples");
  }
  for (const auto& s : samples) {
    if (!(s.h > 0.0)) throw std::invalid_argument("richardson_extrapolate: h must be positive");
  }
  std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.h > b.h; });
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].h == samples[i - 1].h) throw std::invalid_argument("richardson_extrapolate: duplicate h");
  }

  const std::size_t n = samples.size();
  const auto ord = static_cast<std::size_t>(order);
  // table[i][j]: extrapolant of order j using samples i-j..i
  std::vector<std::vector<Complex>> table(n, std::vector<Complex>(ord + 1));
  for (std::size_t i = 0; i < n; ++i) {
    table[i][0] = samples[i].value;
    for (std::size_t j = 1; j <= std::min(i, ord); ++j) {
      const double hi = samples[i].h;
      const double hlo = samples[i - j].h;
      table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) * (hi / (hlo - hi));
    }
  }

  ExtrapolationResult out;
  out.order = order;
  out.limit = table[n - 1][ord];
  out.residual = (n - 1 > ord) ? std::abs(table[n - 1][ord] - table[n - 2][ord])
                               : std::abs(table[n - 1][ord] - table[n - 1][ord - 1]);
  out.samples = std::move(samples);
  return out;
}

}  // namespace qzeta
