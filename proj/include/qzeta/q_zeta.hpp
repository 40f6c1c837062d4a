#pragma once

// The q-zeta family: f_q(s,t) by its defining series and by the binomial
// continuation, zeta_q(s) = f_q(s, s-1), its closed values at s = -m, the
// alternating and Hurwitz variants, and the Jackson-integral form.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qzeta/detail/near_one.hpp"
#include "qzeta/double_double.hpp"
#include "qzeta/num_kernel.hpp"
#include "qzeta/types.hpp"

namespace qzeta {

/// Below this distance from -m the binomial series is replaced by the exact
/// limit at the point of indeterminacy.
inline constexpr double kNonPositiveRerouteRadius = 1e-8;
inline constexpr std::int64_t kNonPositiveRerouteMax = 10'000;

struct ComplexWindow {
  double re_min;
  double re_max;
  double im_min;
  double im_max;
};

namespace detail {

enum class Kernel {
  geometric,    // x / (1 - x),       x = q^z
  hurwitz,      // q^{a z} / (1 - x)
  alternating,  // x / (1 + x): odd-n sum x/(1-x^2) minus even-n sum x^2/(1-x^2)
};

inline constexpr double kEps = std::numeric_limits<double>::epsilon();
inline constexpr double kEpsDD = 4.93e-32;  // 2^-104

/// Nearest point b*delta (or b*delta/2 for the half lattice) to z, returned as
/// (b, distance).
inline std::pair<std::int64_t, double> nearest_delta_multiple(const Complex& z, const Complex& delta, double step) {
  const double b = std::nearbyint(z.imag() / (step * delta.imag()));
  const Complex p = b * step * delta;
  return {static_cast<std::int64_t>(b), std::abs(z - p)};
}

/// Refuses evaluation when some z_r = z0 + r (0 <= r < n_terms) is within the
/// guard of a pole of the kernel.
inline void check_kernel_poles(const Complex& z0, const QParam& q, Kernel kernel, double guard,
                               std::uint64_t n_terms) {
  const double r_star = -std::nearbyint(z0.real());
  if (r_star < 0.0 || r_star >= static_cast<double>(n_terms)) return;
  const Complex z = z0 + r_star;
  const Complex delta = q.delta();
  if (kernel == Kernel::alternating) {
    const auto [b, dist] = nearest_delta_multiple(z, delta, 0.5);
    if (b % 2 != 0 && dist < guard) {
      throw PoleError({-r_star + 0.5 * static_cast<double>(b) * delta, static_cast<std::int64_t>(-r_star), b, delta,
                       PoleKind::alternating, dist});
    }
    return;
  }
  const auto [b, dist] = nearest_delta_multiple(z, delta, 1.0);
  if (dist < guard) {
    throw PoleError({-r_star + static_cast<double>(b) * delta, static_cast<std::int64_t>(-r_star), b, delta,
                     PoleKind::t_lattice, dist});
  }
}

struct TailTracker {
  double prev_abs = 0.0;
  int quiet = 0;

  /// Updates with |scaled term| and the running |scaled sum|; returns the tail
  /// estimate, and counts consecutive terms whose tail is under tolerance.
  double update(double term_abs, double acc_abs, double min_ratio, double tol) {
    double ratio = min_ratio;
    if (prev_abs > 0.0 && term_abs > 0.0) ratio = std::max(ratio, term_abs / prev_abs);
    const double tail = (term_abs == 0.0) ? 0.0 : (ratio < 1.0 ? term_abs * ratio / (1.0 - ratio)
                                                              : std::numeric_limits<double>::infinity());
    const double target = tol * std::max(1.0, acc_abs);
    quiet = (tail <= target && term_abs <= target) ? quiet + 1 : 0;
    prev_abs = term_abs;
    return tail;
  }
};

/// (1-q)^s * sum_r binom(s+r-1, r) * kernel(z0 + r).
///
/// `a` is the Hurwitz offset and is ignored by the other kernels.
inline SeriesResult binomial_series(const Complex& s, const Complex& z0, double a, Kernel kernel, const QParam& q,
                                    const EvalPolicy& policy) {
  policy.validate();
  const std::uint64_t limit = policy.exact_terms.value_or(policy.max_terms);
  check_kernel_poles(z0, q, kernel, policy.pole_guard, limit);

  const Complex prefactor = std::exp(s * std::log(q.h()));
  const double pref_abs = std::abs(prefactor);
  const double L = q.log();
  const bool exact = policy.exact_terms.has_value();
  // asymptotic ratio of consecutive terms
  const double min_ratio = kernel == Kernel::hurwitz ? std::exp(L * a) : q.value();

  SeriesResult out;
  TailTracker tail;
  double round_weight = 0.0;  // sum (10 + r) |scaled term|
  double last_tail = 0.0;
  std::uint64_t r = 0;

  if (policy.accumulator == Accumulator::standard) {
    CompensatedComplexSum acc;
    Complex binom(1.0, 0.0);
    for (; r < limit; ++r) {
      const Complex zl = (z0 + static_cast<double>(r)) * L;
      Complex g;
      switch (kernel) {
        case Kernel::geometric: g = std::exp(zl) / one_minus_exp(zl); break;
        case Kernel::hurwitz: g = std::exp(a * zl) / one_minus_exp(zl); break;
        case Kernel::alternating: {
          const Complex x = std::exp(zl);
          g = x / (1.0 + x);
          break;
        }
      }
      const Complex term = binom * g;
      acc.add(term);
      const double term_abs = pref_abs * std::abs(term);
      round_weight += (10.0 + static_cast<double>(r)) * term_abs;
      if (!exact) {
        last_tail = tail.update(term_abs, pref_abs * std::abs(acc.value()), min_ratio, policy.tol);
        if (tail.quiet >= 3) {
          ++r;
          out.converged = true;
          break;
        }
      } else if (std::abs(g) == 0.0) {
        r = limit;  // every later term underflows to zero as well
        break;
      }
      binom *= (s + static_cast<double>(r)) / static_cast<double>(r + 1);
    }
    out.value = prefactor * acc.value();
    out.err_estimate = last_tail + kEps * round_weight + kEps * std::abs(out.value);
  } else {
    const DoubleDouble Ldd = log(DoubleDouble(q.value()));
    const DoubleDouble q_dd(q.value());
    const ComplexDD qa_step = (kernel == Kernel::hurwitz) ? exp(ComplexDD(Ldd * a)) : ComplexDD(q_dd);
    auto seed = [&](std::uint64_t rr, double scale) {
      const DoubleDouble re = DoubleDouble(z0.real()) + static_cast<double>(rr);
      return exp(ComplexDD(re * Ldd * scale, Ldd * (z0.imag() * scale)));
    };
    DoubleDoubleSum acc;
    ComplexDD binom(DoubleDouble(1.0));
    ComplexDD x;
    ComplexDD y;
    constexpr std::uint64_t kReseed = 1u << 14;
    for (; r < limit; ++r) {
      if (r % kReseed == 0) {
        x = seed(r, 1.0);
        if (kernel == Kernel::hurwitz) y = seed(r, a);
      } else {
        x = x * q_dd;
        if (kernel == Kernel::hurwitz) y = y * qa_step;
      }
      ComplexDD g;
      switch (kernel) {
        case Kernel::geometric: g = x / (ComplexDD(DoubleDouble(1.0)) - x); break;
        case Kernel::hurwitz: g = y / (ComplexDD(DoubleDouble(1.0)) - x); break;
        case Kernel::alternating: g = x / (ComplexDD(DoubleDouble(1.0)) + x); break;
      }
      const ComplexDD term = binom * g;
      acc.add(term);
      const double term_abs = pref_abs * std::abs(term.to_complex());
      round_weight += (10.0 + static_cast<double>(r)) * term_abs;
      if (!exact) {
        last_tail = tail.update(term_abs, pref_abs * std::abs(acc.value()), min_ratio, policy.tol);
        if (tail.quiet >= 3) {
          ++r;
          out.converged = true;
          break;
        }
      } else if (g.re.hi == 0.0 && g.im.hi == 0.0) {
        r = limit;
        break;
      }
      const ComplexDD step(DoubleDouble(s.real()) + static_cast<double>(r), DoubleDouble(s.imag()));
      binom = binom * step / static_cast<double>(r + 1);
    }
    out.value = prefactor * acc.value();
    out.err_estimate = last_tail + kEpsDD * round_weight + kEps * std::abs(out.value);
  }

  out.terms_used = r;
  if (exact) {
    out.converged = true;
  } else if (!out.converged) {
    throw ConvergenceError("binomial series did not converge within " + std::to_string(limit) + " terms");
  }
  if (!is_finite(out.value)) throw std::overflow_error("binomial series overflowed");
  return out;
}

inline DoubleDouble binomial_dd(std::uint64_t n, std::uint64_t k) {
  DoubleDouble c(1.0);
  for (std::uint64_t j = 0; j < k; ++j) c = c * static_cast<double>(n - j) / static_cast<double>(j + 1);
  return c;
}

/// Closed value of zeta_q(-m; a) in double-double:
/// (1-q)^{-m} { sum_{j=1}^{m+1} (-1)^{m+1-j} binom(m, j-1) q^{(1-a)j}/(q^j - 1)
///              + (-1)^{m+1} / ((m+1) log q) }.
inline double hurwitz_nonpositive_dd(std::uint64_t m, double a, const QParam& q) {
  const DoubleDouble q_dd(q.value());
  const DoubleDouble L = log(q_dd);
  DoubleDouble braces = DoubleDouble(((m + 1) % 2 == 0) ? 1.0 : -1.0) / (L * static_cast<double>(m + 1));
  DoubleDouble q_pow_j(1.0);
  for (std::uint64_t j = 1; j <= m + 1; ++j) {
    q_pow_j = q_pow_j * q_dd;
    DoubleDouble numer = (a == 1.0) ? DoubleDouble(1.0) : exp(L * ((1.0 - a) * static_cast<double>(j)));
    const double sign = ((m + 1 - j) % 2 == 0) ? 1.0 : -1.0;
    braces += binomial_dd(m, j - 1) * sign * numer / (q_pow_j - 1.0);
  }
  const DoubleDouble one_minus_q = DoubleDouble(1.0) - q_dd;
  const double value = (braces / pow(one_minus_q, static_cast<long long>(m))).to_double();
  if (!std::isfinite(value)) throw std::overflow_error("closed value at non-positive integer overflowed");
  return value;
}

}  // namespace detail

/// f_q(s,t) = sum_{n>=1} q^{nt} / [n]_q^s, summed term by term. Needs Re(t) > 0.
inline SeriesResult f_q_direct(const Complex& s, const Complex& t, const QParam& q, const EvalPolicy& policy) {
  policy.validate();
  if (!(t.real() > 0.0)) throw std::domain_error("f_q_direct: the defining series diverges for Re(t) <= 0");
  const double L = q.log();
  const double h = q.h();
  const std::uint64_t limit = policy.exact_terms.value_or(policy.max_terms);
  const bool exact = policy.exact_terms.has_value();
  const double rho = std::exp(L * t.real());

  CompensatedComplexSum acc_std;
  DoubleDoubleSum acc_dd;
  auto acc_value = [&] { return policy.accumulator == Accumulator::standard ? acc_std.value() : acc_dd.value(); };

  SeriesResult out;
  detail::TailTracker tail;
  double last_tail = 0.0;
  double round_weight = 0.0;
  std::uint64_t n = 1;
  for (; n <= limit; ++n) {
    const double nd = static_cast<double>(n);
    const double qint = -std::expm1(nd * L) / h;
    const Complex term = std::exp(nd * t * L - s * std::log(qint));
    if (policy.accumulator == Accumulator::standard) {
      acc_std.add(term);
    } else {
      acc_dd.add(term);
    }
    const double term_abs = std::abs(term);
    round_weight += (4.0 + nd * std::abs(t) * std::abs(L) + std::abs(s)) * term_abs;
    if (!exact) {
      last_tail = tail.update(term_abs, std::abs(acc_value()), rho, policy.tol);
      if (tail.quiet >= 3) {
        out.converged = true;
        break;
      }
    } else if (term_abs == 0.0) {
      n = limit;
      break;
    }
  }
  out.value = acc_value();
  out.terms_used = std::min(n, limit);
  out.err_estimate = (exact ? 0.0 : last_tail) + detail::kEps * round_weight;
  if (exact) {
    out.converged = true;
  } else if (!out.converged) {
    throw ConvergenceError("f_q_direct did not converge within " + std::to_string(limit) + " terms");
  }
  return out;
}

/// f_q(s,t) through the binomial continuation
/// (1-q)^s sum_{r>=0} binom(s+r-1, r) q^{t+r} / (1 - q^{t+r}),
/// valid away from the poles t in Z_{<=0} + delta Z.
inline SeriesResult f_q_continued(const Complex& s, const Complex& t, const QParam& q, const EvalPolicy& policy) {
  return detail::binomial_series(s, t, 1.0, detail::Kernel::geometric, q, policy);
}

/// (q-1)/log q, the residue of zeta_q at s = 1.
inline double residue_at_one(const QParam& q) { return -q.h() / std::log1p(-q.h()); }

/// lim_{s -> -m} zeta_q(s).
inline double zeta_q_nonpositive(std::uint64_t m, const QParam& q) {
  if (auto v = detail::hurwitz_nonpositive_near_one(m, 1.0, q.log(), q.h())) return *v;
  return detail::hurwitz_nonpositive_dd(m, 1.0, q);
}

/// Nearest point of the s-pole lattice together with whether it is an actual
/// pole (a = 1, or a <= 0 with b != 0) or a removable point -m.
struct LatticeProbe {
  PoleDescriptor point;
  bool is_pole;
  bool is_nonpositive_integer;
};

inline LatticeProbe probe_s_lattice(const Complex& s, const QParam& q) {
  const Complex delta = q.delta();
  const double a = std::nearbyint(s.real());
  const double b = std::nearbyint(s.imag() / delta.imag());
  const Complex base = a + b * delta;
  LatticeProbe p;
  p.point = {base, static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), delta, PoleKind::s_lattice,
             std::abs(s - base)};
  p.is_pole = (a == 1.0) || (a <= 0.0 && b != 0.0);
  p.is_nonpositive_integer = (a <= 0.0 && b == 0.0);
  return p;
}

namespace detail {

inline SeriesResult closed_result(double v) {
  SeriesResult r;
  r.value = Complex(v, 0.0);
  r.err_estimate = 64.0 * kEps * std::abs(v);
  r.converged = true;
  return r;
}

template <typename Closed, typename Series>
SeriesResult with_s_lattice(const Complex& s, const QParam& q, const EvalPolicy& policy, Closed&& closed,
                            Series&& series) {
  policy.validate();
  const LatticeProbe probe = probe_s_lattice(s, q);
  if (probe.is_nonpositive_integer && probe.point.distance < kNonPositiveRerouteRadius &&
      -probe.point.a <= kNonPositiveRerouteMax) {
    SeriesResult r = closed_result(closed(static_cast<std::uint64_t>(-probe.point.a)));
    r.terms_used = static_cast<std::uint64_t>(-probe.point.a) + 1;
    return r;
  }
  if (probe.is_pole && probe.point.distance < policy.pole_guard) throw PoleError(probe.point);
  try {
    return series();
  } catch (const PoleError& e) {
    // the t-lattice pole hit by z = s - 1 + r sits at s = 1 - r + b delta
    PoleDescriptor p = e.pole();
    p.kind = PoleKind::s_lattice;
    p.a += 1;
    p.base += 1.0;
    throw PoleError(p);
  }
}

}  // namespace detail

/// zeta_q(s) = f_q(s, s-1), with the exact limit substituted at s = -m.
inline SeriesResult zeta_q(const Complex& s, const QParam& q, const EvalPolicy& policy = {}) {
  return detail::with_s_lattice(
      s, q, policy, [&](std::uint64_t m) { return zeta_q_nonpositive(m, q); },
      [&] { return f_q_continued(s, s - 1.0, q, policy); });
}

/// Lattice poles {1 + b delta} and {a + b delta : a <= 0, b != 0} in the window.
inline std::vector<PoleDescriptor> pole_set(const QParam& q, const ComplexWindow& w) {
  if (!(std::isfinite(w.re_min) && std::isfinite(w.re_max) && std::isfinite(w.im_min) && std::isfinite(w.im_max))) {
    throw std::invalid_argument("pole_set: window must be bounded");
  }
  const Complex delta = q.delta();
  const double step = delta.imag();  // negative
  const double b_lo = std::ceil(std::min(w.im_min / step, w.im_max / step) - 1e-12);
  const double b_hi = std::floor(std::max(w.im_min / step, w.im_max / step) + 1e-12);
  const double a_lo = std::ceil(w.re_min);
  const double a_hi = std::floor(w.re_max);
  if ((b_hi - b_lo + 1.0) * std::max(0.0, a_hi - a_lo + 1.0) > 1e6) {
    throw std::invalid_argument("pole_set: window contains too many lattice points");
  }
  std::vector<PoleDescriptor> out;
  auto inside = [&](const Complex& z) {
    return z.real() >= w.re_min && z.real() <= w.re_max && z.imag() >= w.im_min && z.imag() <= w.im_max;
  };
  for (double b = b_lo; b <= b_hi; b += 1.0) {
    for (double a = a_lo; a <= a_hi; a += 1.0) {
      if (!(a == 1.0 || (a <= 0.0 && b != 0.0))) continue;
      const Complex z = a + b * delta;
      if (!inside(z)) continue;
      out.push_back({z, static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), delta, PoleKind::s_lattice, 0.0});
    }
  }
  std::sort(out.begin(), out.end(), [](const PoleDescriptor& x, const PoleDescriptor& y) {
    return x.base.imag() != y.base.imag() ? x.base.imag() < y.base.imag() : x.base.real() < y.base.real();
  });
  return out;
}

/// Alternating q-zeta sum_{n>=1} (-1)^{n-1} q^{n(s-1)} / [n]_q^s through the
/// same binomial rearrangement; the geometric sums over odd and even n combine
/// to x/(1+x), which has no pole at x = 1.
inline SeriesResult tilde_zeta_q(const Complex& s, const QParam& q, const EvalPolicy& policy = {}) {
  return detail::binomial_series(s, s - 1.0, 1.0, detail::Kernel::alternating, q, policy);
}

/// (1-q) sum_{j>=0} q^{jt} / (1 - q^{j+1})^s, which equals q^{-t} (1-q)^{1-s} f_q(s,t).
inline Complex jackson_integral_form(const Complex& s, const Complex& t, const QParam& q,
                                     const EvalPolicy& policy = {}) {
  policy.validate();
  if (!(t.real() > 0.0)) throw std::domain_error("jackson_integral_form: needs Re(t) > 0");
  const double L = q.log();
  const std::uint64_t limit = policy.exact_terms.value_or(policy.max_terms);
  CompensatedComplexSum acc;
  detail::TailTracker tail;
  const double rho = std::exp(L * t.real());
  for (std::uint64_t j = 0; j < limit; ++j) {
    const double jd = static_cast<double>(j);
    const Complex term = std::exp(jd * t * L - s * std::log(-std::expm1((jd + 1.0) * L)));
    acc.add(term);
    if (!policy.exact_terms) {
      tail.update(std::abs(term), std::abs(acc.value()), rho, policy.tol);
      if (tail.quiet >= 3) return q.h() * acc.value();
    }
  }
  if (policy.exact_terms) return q.h() * acc.value();
  throw ConvergenceError("jackson_integral_form did not converge");
}

/// Closed value of the Hurwitz q-zeta at s = -m.
inline double hurwitz_zeta_q_nonpositive(std::uint64_t m, double a, const QParam& q) {
  if (auto v = detail::hurwitz_nonpositive_near_one(m, a, q.log(), q.h())) return *v;
  return detail::hurwitz_nonpositive_dd(m, a, q);
}

/// zeta_q(s; a) = sum_{n>=0} q^{(n+a)(s-1)} / [n+a]_q^s via
/// (1-q)^s sum_r binom(s+r-1, r) q^{a(s-1+r)} / (1 - q^{s-1+r}).
inline SeriesResult hurwitz_zeta_q(const Complex& s, double a, const QParam& q, const EvalPolicy& policy = {}) {
  if (!(a > 0.0)) throw std::invalid_argument("hurwitz_zeta_q: a must be positive");
  return detail::with_s_lattice(
      s, q, policy, [&](std::uint64_t m) { return hurwitz_zeta_q_nonpositive(m, a, q); },
      [&] {
        const auto kernel = (a == 1.0) ? detail::Kernel::geometric : detail::Kernel::hurwitz;
        return detail::binomial_series(s, s - 1.0, a, kernel, q, policy);
      });
}

}  // namespace qzeta
