#pragma once

// Property suites run by `qzeta_cli verify`.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qzeta/qzeta.hpp"

namespace qzeta::cli {

struct Check {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string detail;  // exception text when the check could not run
};

namespace detail {

struct Measurement {
  double value;
  double tol;
};

class SuiteRunner {
 public:
  SuiteRunner(std::string suite, std::optional<double> tol_override, std::vector<Check>& out)
      : suite_(std::move(suite)), tol_override_(tol_override), out_(out) {}

  /// `measure` returns (measured, tol); pass means measured <= tol.
  void run(const std::string& name, const std::function<Measurement()>& measure) {
    Check c;
    c.suite = suite_;
    c.name = name;
    try {
      const Measurement m = measure();
      c.measured = m.value;
      c.tol = tol_override_.value_or(m.tol);
      c.pass = std::isfinite(m.value) && m.value <= c.tol;
    } catch (const std::exception& e) {
      c.measured = std::numeric_limits<double>::quiet_NaN();
      c.detail = e.what();
    }
    out_.push_back(std::move(c));
  }

 private:
  std::string suite_;
  std::optional<double> tol_override_;
  std::vector<Check>& out_;
};

inline double rel_gap(const Complex& a, const Complex& b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

inline std::vector<QParam> h_grid(std::initializer_list<double> hs) {
  std::vector<QParam> g;
  for (double h : hs) g.push_back(QParam::from_h(h));
  return g;
}

inline void identities(SuiteRunner& r) {
  r.run("q-Bernoulli recursion n<=12", [] {
    double worst = 0.0;
    for (double qv : {0.3, 0.5, 0.9, 0.99}) {
      const QParam q(qv);
      for (std::size_t n = 0; n <= 12; ++n) {
        worst = std::max(worst, std::abs(recursion_residual(n, q)) / std::max(1.0, std::abs(q_bernoulli(n, q))));
      }
    }
    return Measurement{worst, 1e-9};
  });
  r.run("generating-function equation q=0.5 order 12", [] {
    const auto res = functional_equation_residual(QParam(0.5), 12);
    return Measurement{*std::max_element(res.begin(), res.end()), 1e-10};
  });
  r.run("generating-function equation q=0.99 order 12", [] {
    const auto res = functional_equation_residual(QParam(0.99), 12);
    return Measurement{*std::max_element(res.begin(), res.end()), 1e-8};
  });
  r.run("Lambert form k=2 q=0.5", [] { return Measurement{lambert_identity_residual(2, QParam(0.5)), 1e-12}; });
  r.run("Lambert form k=5 q=0.9", [] { return Measurement{lambert_identity_residual(5, QParam(0.9)), 1e-11}; });
  r.run("Lambert form k=3 q=0.99", [] { return Measurement{lambert_identity_residual(3, QParam(0.99)), 1e-10}; });
  r.run("Lambert form k=2..6", [] {
    double worst = 0.0;
    for (int k = 2; k <= 6; ++k) {
      for (double qv : {0.3, 0.7, 0.95}) worst = std::max(worst, lambert_identity_residual(k, QParam(qv)));
    }
    return Measurement{worst, 1e-10};
  });
  r.run("alternating identity, 20 random points", [] {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> uq(0.3, 0.95), ur(-4.0, 5.0), ui(-6.0, 6.0);
    EvalPolicy dd;
    dd.accumulator = Accumulator::double_double;
    double worst = 0.0;
    int used = 0;
    while (used < 20) {
      const double qv = uq(gen);
      const Complex s(ur(gen), ui(gen));
      Complex rhs;
      try {
        rhs = zeta_q(s, QParam(qv), dd).value - 2.0 * std::pow(1.0 + qv, -s) * zeta_q(s, QParam(qv * qv), dd).value;
      } catch (const PoleError&) {
        continue;
      }
      worst = std::max(worst, rel_gap(tilde_zeta_q(s, QParam(qv), dd).value, rhs));
      ++used;
    }
    return Measurement{worst, 1e-11};
  });
  r.run("Jackson integral relation, 20 random points", [] {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> uq(0.2, 0.9), usr(-3.0, 4.0), usi(-4.0, 4.0), utr(0.3, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const QParam q(uq(gen));
      const Complex s(usr(gen), usi(gen));
      const Complex t(utr(gen), usi(gen));
      const Complex rhs = std::exp(-t * q.log()) * std::pow(Complex(q.h()), 1.0 - s) * f_q_direct(s, t, q, {}).value;
      worst = std::max(worst, rel_gap(jackson_integral_form(s, t, q), rhs));
    }
    return Measurement{worst, 1e-11};
  });
  r.run("Hurwitz a=1 reduces to zeta_q", [] {
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> uq(0.3, 0.95), us(-5.0, 5.0);
    double worst = 0.0;
    int used = 0;
    while (used < 20) {
      const QParam q(uq(gen));
      const Complex s(us(gen), us(gen));
      Complex z;
      try {
        z = zeta_q(s, q).value;
      } catch (const PoleError&) {
        continue;
      }
      worst = std::max(worst, std::abs(hurwitz_zeta_q(s, 1.0, q).value - z));
      ++used;
    }
    return Measurement{worst, 1e-13};
  });
  r.run("Euler-Maclaurin q-form, 3x3 grid", [] {
    double worst = 0.0;
    for (double s : {2.0, 3.0, 4.0}) {
      for (double qv : {0.5, 0.8, 0.95}) worst = std::max(worst, verify_zqeul(s, QParam(qv)));
    }
    return Measurement{worst, 1e-8};
  });
  r.run("Fourier q-form s=2 q=0.5 N=200", [] { return Measurement{verify_zqbq(2.0, QParam(0.5), 200), 1e-4}; });
  r.run("Fourier q-form s=3 q=0.8 N=200", [] { return Measurement{verify_zqbq(3.0, QParam(0.8), 200), 1e-4}; });
  r.run("Fourier q-form decay N=200 -> 500 (ratio)", [] {
    const double a = verify_zqbq(2.0, QParam(0.5), 200);
    const double b = verify_zqbq(2.0, QParam(0.5), 500);
    return Measurement{b / a, 1.0 - 1e-12};
  });
  r.run("incomplete beta recursion M-independence", [] {
    const QParam q(0.5);
    const std::vector<IncompleteBetaQuery> queries{
        {0.7, 1.5, -2.5},
        {0.5, 2.0 + q.delta(), -3.0},
        {0.5, 2.0 - 3.0 * q.delta(), -2.0},
        {0.8, Complex(2.0, 28.0), -4.0},
        {0.3, Complex(0.4, -2.0), Complex(-1.0, 0.5)},
    };
    double worst = 0.0;
    for (const auto& query : queries) {
      for (int M = 2; M <= 8; ++M) {
        const Complex b = incomplete_beta_recursion(query, M + 1);
        worst = std::max(worst, std::abs(incomplete_beta_recursion(query, M) - b) / std::abs(b));
      }
    }
    return Measurement{worst, 1e-9};
  });
}

inline void limits(SuiteRunner& r) {
  const auto grid = h_grid({0.1, 0.05, 0.025, 0.0125, 0.00625});
  for (std::size_t m = 0; m <= 8; ++m) {
    r.run("zeta_q(" + (m == 0 ? std::string("0") : "-" + std::to_string(m)) + ") -> -B_" + std::to_string(m + 1) + "/" + std::to_string(m + 1), [&, m] {
      const double expected = -to_double(bernoulli_number(m + 1)) / static_cast<double>(m + 1);
      return Measurement{std::abs(theorem1_limit(m, grid, 4).limit - expected), 1e-6};
    });
  }
  const std::vector<std::pair<std::string, Complex>> spots{
      {"-1/2", -0.5}, {"1/2", 0.5}, {"2", 2.0}, {"3", 3.0}, {"0.5+1i", Complex(0.5, 1.0)}, {"-2.5", -2.5}};
  for (const auto& [label, s] : spots) {
    r.run("zeta_q(" + label + ") -> zeta(" + label + ")", [s = s] {
      return Measurement{std::abs(theorem2_limit(s).limit - zeta_em(s)), 1e-5};
    });
  }
  for (int k : {2, 3, 4, 6}) {
    r.run("Eisenstein k=" + std::to_string(k) + " (relative)", [k] {
      const double expected = std::tgamma(static_cast<double>(k)) * zeta_em(static_cast<double>(k)).real();
      return Measurement{std::abs(eisenstein_limit(k).limit.real() - expected) / expected, 1e-4};
    });
  }
  for (std::uint64_t m = 0; m <= 2; ++m) {
    r.run("Hurwitz zeta_q(-" + std::to_string(m) + ", 1/2) limit", [&, m] {
      std::vector<ExtrapolationSample> samples;
      for (const QParam& q : grid) samples.push_back({q.h(), hurwitz_zeta_q_nonpositive(m, 0.5, q)});
      const double expected = -bernoulli_poly(m + 1, 0.5).real() / static_cast<double>(m + 1);
      return Measurement{std::abs(richardson_extrapolate(samples, 4).limit - expected), 1e-5};
    });
  }
  r.run("q-Bernoulli B_m(q) -> B_m, m<=8", [&] {
    double worst = 0.0;
    for (std::size_t m = 0; m <= 8; ++m) {
      std::vector<ExtrapolationSample> samples;
      for (const QParam& q : grid) samples.push_back({q.h(), q_bernoulli(m, q)});
      worst = std::max(worst, std::abs(richardson_extrapolate(samples, 4).limit - to_double(bernoulli_number(m))));
    }
    return Measurement{worst, 1e-6};
  });
  r.run("residue (q-1)/log q -> 1", [&] {
    std::vector<ExtrapolationSample> samples;
    for (const QParam& q : grid) samples.push_back({q.h(), residue_at_one(q)});
    return Measurement{std::abs(richardson_extrapolate(samples, 4).limit - 1.0), 1e-8};
  });
  r.run("residue probe eps*zeta_q(1+eps), eps=1e-3", [] {
    double worst = 0.0;
    for (double qv : {0.5, 0.9}) {
      const QParam q(qv);
      const double eps = 1e-3;
      worst = std::max(worst, std::abs(eps * zeta_q(1.0 + eps, q).value - residue_at_one(q)));
    }
    return Measurement{worst, 1e-2};
  });
}

inline void em(SuiteRunner& r) {
  r.run("zeta(1/2) = -1.4603545088", [] { return Measurement{std::abs(zeta_em(0.5) - -1.4603545088), 1e-9}; });
  const std::vector<std::pair<int, double>> trivial{{0, -0.5}, {-1, -1.0 / 12.0}, {-2, 0.0}, {-3, 1.0 / 120.0}};
  for (const auto& [s, v] : trivial) {
    r.run("zeta(" + std::to_string(s) + ")", [s = s, v = v] {
      return Measurement{std::abs(zeta_em(static_cast<double>(s)) - v), 1e-12};
    });
  }
  r.run("zeta(-m) = -B_{m+1}/(m+1), m<=6 (relative)", [] {
    double worst = 0.0;
    for (int m = 0; m <= 6; ++m) {
      const double expected = -to_double(bernoulli_number(static_cast<std::size_t>(m + 1))) / (m + 1);
      const double got = zeta_em(static_cast<double>(-m)).real();
      worst = std::max(worst, expected == 0.0 ? std::abs(got) : std::abs(got - expected) / std::abs(expected));
    }
    return Measurement{worst, 1e-10};
  });
  r.run("M=5 vs M=10, 30 random points", [] {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> ur(-4.0, 6.0), ui(-20.0, 20.0);
    EMConfig five;
    five.M = 5;
    double worst = 0.0;
    int used = 0;
    while (used < 30) {
      const Complex s(ur(gen), ui(gen));
      if (std::abs(s - 1.0) <= 0.1) continue;
      worst = std::max(worst, std::abs(zeta_em(s, five) - zeta_em(s)));
      ++used;
    }
    return Measurement{worst, 1e-10};
  });
  r.run("(s-1)zeta(s) -> 1 linearly", [] {
    // the error should scale like eps (slope gamma); report the largest ratio drift
    double prev_ratio = 0.0;
    double worst = 0.0;
    for (int k = 2; k <= 5; ++k) {
      const double eps = std::pow(10.0, -k);
      const double err = std::abs(eps * zeta_em(1.0 + eps) - 1.0);
      const double ratio = err / eps;
      if (k > 2) worst = std::max(worst, std::abs(ratio - prev_ratio));
      prev_ratio = ratio;
    }
    return Measurement{worst, 1e-2};
  });
  r.run("Euler-Maclaurin sum vs direct sum, N=30", [] {
    std::mt19937_64 gen(19);
    std::uniform_real_distribution<double> ur(1.1, 5.0), ui(-5.0, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const Complex s(ur(gen), ui(gen));
      auto f = [&](int k, double x) {
        Complex c(1.0, 0.0);
        for (int j = 0; j < k; ++j) c *= -(s + static_cast<double>(j));
        return c * std::exp(-(s + static_cast<double>(k)) * std::log(x));
      };
      CompensatedComplexSum direct;
      for (int n = 1; n <= 30; ++n) direct.add(std::exp(-s * std::log(static_cast<double>(n))));
      const Complex d = direct.value();
      worst = std::max(worst, std::abs(euler_maclaurin_sum(f, 30) - d) / std::abs(d));
    }
    return Measurement{worst, 1e-12};
  });
}

}  // namespace detail

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"identities", "limits", "em", "all"};
  return names;
}

/// Runs one suite (or all); `tol_override` replaces every per-check threshold.
inline std::vector<Check> run_suite(const std::string& suite, std::optional<double> tol_override = std::nullopt) {
  std::vector<Check> out;
  auto one = [&](const std::string& name, void (*body)(detail::SuiteRunner&)) {
    if (suite != name && suite != "all") return;
    detail::SuiteRunner runner(name, tol_override, out);
    body(runner);
  };
  one("identities", detail::identities);
  one("limits", detail::limits);
  one("em", detail::em);
  return out;
}

}  // namespace qzeta::cli
