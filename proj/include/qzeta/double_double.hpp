#pragma once

// Unevaluated-sum arithmetic (hi + lo) with roughly 106 significant bits.
// Error-free transforms follow Dekker/Knuth; products use std::fma, which is
// correctly rounded whether or not the target has a hardware FMA.

#include <cmath>
#include <complex>
#include <limits>

namespace qzeta {

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}  // NOLINT: implicit widening is intended
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  explicit operator double() const noexcept { return hi + lo; }
  double to_double() const noexcept { return hi + lo; }
};

namespace dd_detail {

inline DoubleDouble two_sum(double a, double b) noexcept {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DoubleDouble quick_two_sum(double a, double b) noexcept {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) noexcept {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline DoubleDouble operator-(const DoubleDouble& a) noexcept { return {-a.hi, -a.lo}; }

inline DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) noexcept {
  DoubleDouble s = dd_detail::two_sum(a.hi, b.hi);
  const DoubleDouble t = dd_detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = dd_detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator+(const DoubleDouble& a, double b) noexcept {
  DoubleDouble s = dd_detail::two_sum(a.hi, b);
  s.lo += a.lo;
  return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator+(double a, const DoubleDouble& b) noexcept { return b + a; }
inline DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) noexcept { return a + (-b); }
inline DoubleDouble operator-(const DoubleDouble& a, double b) noexcept { return a + (-b); }
inline DoubleDouble operator-(double a, const DoubleDouble& b) noexcept { return (-b) + a; }

inline DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) noexcept {
  DoubleDouble p = dd_detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator*(const DoubleDouble& a, double b) noexcept {
  DoubleDouble p = dd_detail::two_prod(a.hi, b);
  p.lo += a.lo * b;
  return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator*(double a, const DoubleDouble& b) noexcept { return b * a; }

inline DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) noexcept {
  // long division: three quotient digits
  const double q1 = a.hi / b.hi;
  DoubleDouble r = a - b * q1;
  const double q2 = r.hi / b.hi;
  r = r - b * q2;
  const double q3 = r.hi / b.hi;
  DoubleDouble q = dd_detail::quick_two_sum(q1, q2);
  return q + q3;
}

inline DoubleDouble operator/(const DoubleDouble& a, double b) noexcept { return a / DoubleDouble(b); }
inline DoubleDouble operator/(double a, const DoubleDouble& b) noexcept { return DoubleDouble(a) / b; }

inline DoubleDouble& operator+=(DoubleDouble& a, const DoubleDouble& b) noexcept { return a = a + b; }
inline DoubleDouble& operator-=(DoubleDouble& a, const DoubleDouble& b) noexcept { return a = a - b; }
inline DoubleDouble& operator*=(DoubleDouble& a, const DoubleDouble& b) noexcept { return a = a * b; }
inline DoubleDouble& operator/=(DoubleDouble& a, const DoubleDouble& b) noexcept { return a = a / b; }

inline bool operator<(const DoubleDouble& a, const DoubleDouble& b) noexcept {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}

inline DoubleDouble abs(const DoubleDouble& a) noexcept { return a.hi < 0.0 ? -a : a; }

inline DoubleDouble ldexp(const DoubleDouble& a, int e) noexcept {
  return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)};
}

inline DoubleDouble sqr(const DoubleDouble& a) noexcept { return a * a; }

/// Integer power by repeated squaring.
inline DoubleDouble pow(DoubleDouble base, long long n) {
  if (n < 0) return DoubleDouble(1.0) / pow(base, -n);
  DoubleDouble result(1.0);
  while (n > 0) {
    if (n & 1) result *= base;
    base = sqr(base);
    n >>= 1;
  }
  return result;
}

namespace dd_const {
inline constexpr DoubleDouble ln2{6.931471805599452862e-01, 2.319046813846299558e-17};
inline constexpr DoubleDouble pi{3.141592653589793116e+00, 1.224646799147353207e-16};
inline constexpr DoubleDouble half_pi{1.570796326794896558e+00, 6.123233995736766036e-17};
inline constexpr DoubleDouble two_pi{6.283185307179586232e+00, 2.449293598294706414e-16};
}  // namespace dd_const

inline DoubleDouble exp(const DoubleDouble& a) {
  if (a.hi > 709.78) return DoubleDouble(std::numeric_limits<double>::infinity());
  if (a.hi < -745.2) return DoubleDouble(0.0);
  if (a.hi == 0.0) return DoubleDouble(1.0);

  constexpr int kHalvings = 10;
  const double k = std::nearbyint(a.hi / dd_const::ln2.hi);
  DoubleDouble r = ldexp(a - dd_const::ln2 * k, -kHalvings);

  // expm1(r) by Taylor; |r| < 3.4e-4 so ten terms reach 2^-106
  DoubleDouble term = r;
  DoubleDouble em1 = r;
  for (int i = 2; i <= 11; ++i) {
    term = term * r / static_cast<double>(i);
    em1 += term;
  }
  for (int i = 0; i < kHalvings; ++i) em1 = em1 * (em1 + 2.0);

  DoubleDouble result = em1 + 1.0;
  // split the scaling so subnormal results round once
  const int ik = static_cast<int>(k);
  if (ik < -1000) return ldexp(ldexp(result, -1000), ik + 1000);
  return ldexp(result, ik);
}

inline DoubleDouble log(const DoubleDouble& a) {
  if (!(a.hi > 0.0)) return DoubleDouble(std::numeric_limits<double>::quiet_NaN());
  // one Newton step on exp(y) = a doubles the accuracy of the binary64 guess
  DoubleDouble y(std::log(a.hi));
  y = y + a * exp(-y) - 1.0;
  return y;
}

/// sin and cos together. Argument reduction is by pi/2 in double-double, which
/// is accurate for |x| up to about 1e15.
inline void sincos(const DoubleDouble& x, DoubleDouble& s, DoubleDouble& c) {
  const double kq = std::nearbyint(x.hi / dd_const::half_pi.hi);
  const DoubleDouble r = x - dd_const::half_pi * kq;
  const DoubleDouble r2 = sqr(r);

  DoubleDouble sin_r = r;
  DoubleDouble term = r;
  for (int i = 3; i <= 29; i += 2) {
    term = -term * r2 / static_cast<double>((i - 1) * i);
    sin_r += term;
  }
  DoubleDouble cos_r(1.0);
  term = DoubleDouble(1.0);
  for (int i = 2; i <= 28; i += 2) {
    term = -term * r2 / static_cast<double>((i - 1) * i);
    cos_r += term;
  }

  const long long quadrant = static_cast<long long>(kq) & 3;
  switch (quadrant) {
    case 0: s = sin_r; c = cos_r; break;
    case 1: s = cos_r; c = -sin_r; break;
    case 2: s = -sin_r; c = -cos_r; break;
    default: s = -cos_r; c = sin_r; break;
  }
}

/// Complex number with double-double components.
struct ComplexDD {
  DoubleDouble re;
  DoubleDouble im;

  ComplexDD() = default;
  ComplexDD(DoubleDouble r, DoubleDouble i = DoubleDouble()) : re(r), im(i) {}
  ComplexDD(const std::complex<double>& z) : re(z.real()), im(z.imag()) {}  // NOLINT

  std::complex<double> to_complex() const noexcept { return {re.to_double(), im.to_double()}; }
};

inline ComplexDD operator+(const ComplexDD& a, const ComplexDD& b) noexcept { return {a.re + b.re, a.im + b.im}; }
inline ComplexDD operator-(const ComplexDD& a, const ComplexDD& b) noexcept { return {a.re - b.re, a.im - b.im}; }
inline ComplexDD operator-(const ComplexDD& a) noexcept { return {-a.re, -a.im}; }

inline ComplexDD operator*(const ComplexDD& a, const ComplexDD& b) noexcept {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline ComplexDD operator*(const ComplexDD& a, const DoubleDouble& b) noexcept { return {a.re * b, a.im * b}; }
inline ComplexDD operator*(const ComplexDD& a, double b) noexcept { return {a.re * b, a.im * b}; }

inline ComplexDD operator/(const ComplexDD& a, const DoubleDouble& b) noexcept { return {a.re / b, a.im / b}; }
inline ComplexDD operator/(const ComplexDD& a, double b) noexcept { return {a.re / b, a.im / b}; }

inline ComplexDD operator/(const ComplexDD& a, const ComplexDD& b) noexcept {
  const DoubleDouble norm = sqr(b.re) + sqr(b.im);
  return {(a.re * b.re + a.im * b.im) / norm, (a.im * b.re - a.re * b.im) / norm};
}

inline ComplexDD& operator+=(ComplexDD& a, const ComplexDD& b) noexcept { return a = a + b; }
inline ComplexDD& operator*=(ComplexDD& a, const ComplexDD& b) noexcept { return a = a * b; }

inline ComplexDD exp(const ComplexDD& z) {
  const DoubleDouble m = exp(z.re);
  if (z.im.hi == 0.0 && z.im.lo == 0.0) return {m, DoubleDouble()};
  DoubleDouble s, c;
  sincos(z.im, s, c);
  return {m * c, m * s};
}

}  // namespace qzeta
