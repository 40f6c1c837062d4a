#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qzeta {

using Complex = std::complex<double>;

inline bool is_finite(const Complex& z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Deformation parameter q in (0,1) together with its (negative) natural
/// logarithm.
class QParam {
 public:
  explicit QParam(double q) : q_(q) {
    if (!(q > 0.0 && q < 1.0)) {
      throw std::invalid_argument("q must lie in the open interval (0,1), got " + std::to_string(q));
    }
    log_q_ = std::log(q);
  }

  double value() const noexcept { return q_; }
  double log() const noexcept { return log_q_; }
  /// h = 1 - q, the step used when extrapolating toward q = 1.
  double h() const noexcept { return 1.0 - q_; }

  /// Spacing of the pole lattice in the imaginary direction, 2*pi*i/log q.
  Complex delta() const noexcept { return Complex(0.0, 2.0 * M_PI / log_q_); }

  static QParam from_h(double h) { return QParam(1.0 - h); }

 private:
  double q_;
  double log_q_;
};

enum class Accumulator { standard, double_double };

inline const char* to_string(Accumulator a) noexcept {
  return a == Accumulator::standard ? "standard" : "double-double";
}

struct SeriesResult {
  Complex value{};
  double err_estimate = 0.0;
  std::uint64_t terms_used = 0;
  bool converged = false;
};

struct ExtrapolationSample {
  double h;
  Complex value;
};

struct ExtrapolationResult {
  Complex limit{};
  std::vector<ExtrapolationSample> samples;  // strictly decreasing h
  int order = 1;
  double residual = 0.0;
};

/// Truncation and safety settings shared by every q-series evaluation.
struct EvalPolicy {
  double tol = 1e-15;
  std::uint64_t max_terms = 50'000'000;
  double pole_guard = 1e-8;
  Accumulator accumulator = Accumulator::standard;
  /// When set, exactly this many terms are summed and no convergence test runs.
  std::optional<std::uint64_t> exact_terms;

  void validate() const {
    if (!(tol >= 1e-15)) throw std::invalid_argument("EvalPolicy.tol must be >= 1e-15");
    if (!(pole_guard >= 1e-12)) throw std::invalid_argument("EvalPolicy.pole_guard must be >= 1e-12");
    if (max_terms == 0) throw std::invalid_argument("EvalPolicy.max_terms must be positive");
  }

  static EvalPolicy exact(std::uint64_t n, Accumulator acc = Accumulator::double_double) {
    EvalPolicy p;
    p.exact_terms = n;
    p.accumulator = acc;
    return p;
  }
};

enum class PoleKind { t_lattice, s_lattice, alternating };

inline const char* to_string(PoleKind k) noexcept {
  switch (k) {
    case PoleKind::t_lattice: return "t-lattice";
    case PoleKind::s_lattice: return "s-lattice";
    case PoleKind::alternating: return "alternating";
  }
  return "?";
}

/// A lattice point a + b*delta of the pole set. For the alternating series the
/// lattice is shifted by delta/2 and `b` counts half-steps.
struct PoleDescriptor {
  Complex base{};
  std::int64_t a = 0;
  std::int64_t b = 0;
  Complex delta{};
  PoleKind kind = PoleKind::s_lattice;
  double distance = 0.0;  // distance of the offending argument from `base`
};

class PoleError : public std::domain_error {
 public:
  explicit PoleError(PoleDescriptor pole)
      : std::domain_error("argument within pole guard of lattice point " + describe(pole)), pole_(pole) {}
  PoleError(const std::string& what, PoleDescriptor pole) : std::domain_error(what), pole_(pole) {}

  const PoleDescriptor& pole() const noexcept { return pole_; }

 private:
  static std::string describe(const PoleDescriptor& p) {
    return std::string(to_string(p.kind)) + " a=" + std::to_string(p.a) + " b=" + std::to_string(p.b);
  }
  PoleDescriptor pole_;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qzeta
