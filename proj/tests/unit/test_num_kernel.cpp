#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qzeta/num_kernel.hpp"
#include "test_support.hpp"

using namespace qzeta;
using testing_support::uniform;
using testing_support::uniform_complex;

TEST(QParam, RejectsOutOfRange) {
  EXPECT_THROW(QParam(0.0), std::invalid_argument);
  EXPECT_THROW(QParam(1.0), std::invalid_argument);
  EXPECT_THROW(QParam(-0.2), std::invalid_argument);
  EXPECT_THROW(QParam(std::nan("")), std::invalid_argument);
  const QParam q(0.5);
  EXPECT_DOUBLE_EQ(q.log(), std::log(0.5));
  EXPECT_DOUBLE_EQ(q.h(), 0.5);
  EXPECT_NEAR(q.delta().imag(), 2.0 * M_PI / std::log(0.5), 1e-15);
}

TEST(QInteger, SmallIntegers) {
  const QParam q(0.5);
  EXPECT_NEAR(q_integer(1.0, q).real(), 1.0, 1e-15);
  EXPECT_NEAR(q_integer(2.0, q).real(), 1.5, 1e-15);
  EXPECT_NEAR(q_integer(3.0, q).real(), 1.75, 1e-15);
}

TEST(QInteger, ComplexExponentMatchesDefinition) {
  const QParam q(0.7);
  const Complex n(2.5, -1.25);
  const Complex direct = (1.0 - std::exp(n * std::log(0.7))) / 0.3;
  EXPECT_COMPLEX_NEAR(q_integer(n, q), direct, 1e-14);
}

TEST(QInteger, TendsToNAsQToOne) {
  for (double n : {2.0, 5.0, 9.0}) {
    std::vector<ExtrapolationSample> samples;
    // (1-q^n)/(1-q) has degree n-1 in h, so start the grid small enough for order 4
    for (double h : geometric_h_grid(0.01, 5)) samples.push_back({h, q_integer(n, QParam::from_h(h))});
    const auto r = richardson_extrapolate(samples, 4);
    EXPECT_NEAR(r.limit.real(), n, 1e-8);
    EXPECT_LT(r.residual, 1e-8);
  }
}

TEST(Pochhammer, Examples) {
  EXPECT_EQ(pochhammer(Complex(3.7, 1.0), 0), Complex(1.0, 0.0));
  EXPECT_NEAR(pochhammer(1.0, 4).real(), 24.0, 0.0);
  EXPECT_NEAR(pochhammer(2.0, 3).real(), 24.0, 0.0);
}

TEST(Pochhammer, StepRecurrence) {
  for (int i = 0; i < 20; ++i) {
    const Complex s = uniform_complex(-5, 5, -5, 5);
    for (std::uint64_t k = 0; k < 50; ++k) {
      const Complex lhs = pochhammer(s, k + 1);
      const Complex rhs = pochhammer(s, k) * (s + static_cast<double>(k));
      EXPECT_LE(std::abs(lhs - rhs), 1e-14 * std::abs(rhs));
    }
  }
}

TEST(BinomSeriesCoeff, Examples) {
  EXPECT_EQ(binom_series_coeff(Complex(4.2, -1.0), 0), Complex(1.0, 0.0));
  EXPECT_NEAR(binom_series_coeff(1.0, 5).real(), 1.0, 1e-15);
  EXPECT_NEAR(binom_series_coeff(-2.0, 1).real(), -2.0, 1e-15);
  // at s = -m the coefficients are (-1)^r binom(m, r) and vanish beyond r = m
  EXPECT_NEAR(binom_series_coeff(-3.0, 2).real(), 3.0, 1e-15);
  EXPECT_EQ(binom_series_coeff(-3.0, 4), Complex(0.0, 0.0));
}

TEST(BinomSeriesCoeff, TimesFactorialIsPochhammer) {
  for (int i = 0; i < 20; ++i) {
    const Complex s = uniform_complex(-21, 21, -21, 21);
    if (std::abs(s) > 30) continue;
    double fact = 1.0;
    for (std::uint64_t r = 0; r <= 200; ++r) {
      if (r > 0) fact *= static_cast<double>(r);
      if (!std::isfinite(fact)) break;
      const Complex p = pochhammer(s, r);
      if (!is_finite(p)) break;
      EXPECT_LE(std::abs(binom_series_coeff(s, r) * fact - p), 1e-13 * std::abs(p)) << "s=" << s << " r=" << r;
    }
  }
}

TEST(CompensatedSum, Examples) {
  EXPECT_EQ(compensated_sum({}), Complex(0.0, 0.0));
  std::vector<Complex> terms{1.0};
  terms.insert(terms.end(), 10000, Complex(1e-16, 0.0));
  EXPECT_NEAR(compensated_sum(terms).real(), 1.0 + 1e-12, 1e-15 * (1.0 + 1e-12));
  const std::vector<Complex> pair{Complex(3.25, -1e10), Complex(-3.25, 1e10)};
  EXPECT_EQ(compensated_sum(pair), Complex(0.0, 0.0));
}

TEST(CompensatedSum, Errors) {
  const std::vector<Complex> bad{1.0, Complex(std::numeric_limits<double>::infinity(), 0.0)};
  EXPECT_THROW(compensated_sum(bad), std::invalid_argument);
  const std::vector<Complex> big{1.7e308, 1.7e308};
  EXPECT_THROW(compensated_sum(big), std::overflow_error);
}

TEST(CompensatedSum, PermutationInvariant) {
  std::vector<Complex> terms;
  for (int i = 0; i < 2000; ++i) {
    const double mag = std::pow(10.0, uniform(-12, 4));
    terms.emplace_back(mag * uniform(-1, 1), mag * uniform(-1, 1));
  }
  const Complex base = compensated_sum(terms);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(terms.begin(), terms.end(), testing_support::rng());
    const Complex v = compensated_sum(terms);
    EXPECT_LE(std::abs(v - base), 1e-14 * std::abs(base));
  }
}

TEST(Richardson, ConstantAndLinear) {
  std::vector<ExtrapolationSample> c{{0.4, 2.5}, {0.2, 2.5}, {0.1, 2.5}};
  auto r = richardson_extrapolate(c, 2);
  EXPECT_EQ(r.limit, Complex(2.5, 0.0));
  EXPECT_EQ(r.residual, 0.0);

  std::vector<ExtrapolationSample> lin{{0.1, 3.2}, {0.4, 3.8}, {0.2, 3.4}};
  r = richardson_extrapolate(lin, 1);
  EXPECT_NEAR(r.limit.real(), 3.0, 1e-14);
  // samples come back ordered by decreasing h
  ASSERT_EQ(r.samples.size(), 3u);
  EXPECT_GT(r.samples[0].h, r.samples[1].h);
  EXPECT_GT(r.samples[1].h, r.samples[2].h);
}

TEST(Richardson, ResidueFactorLimit) {
  std::vector<ExtrapolationSample> samples;
  for (double h : {0.1, 0.05, 0.025, 0.0125, 0.00625}) {
    const double q = 1.0 - h;
    samples.push_back({h, (q - 1.0) / std::log(q)});
  }
  const auto r = richardson_extrapolate(samples, 4);
  EXPECT_NEAR(r.limit.real(), 1.0, 1e-8);
}

TEST(Richardson, Errors) {
  std::vector<ExtrapolationSample> two{{0.1, 1.0}, {0.05, 1.0}};
  EXPECT_THROW(richardson_extrapolate(two, 2), std::invalid_argument);
  EXPECT_THROW(richardson_extrapolate(two, 0), std::invalid_argument);
  std::vector<ExtrapolationSample> dup{{0.1, 1.0}, {0.1, 2.0}, {0.05, 1.0}};
  EXPECT_THROW(richardson_extrapolate(dup, 1), std::invalid_argument);
  std::vector<ExtrapolationSample> neg{{0.1, 1.0}, {-0.1, 2.0}};
  EXPECT_THROW(richardson_extrapolate(neg, 1), std::invalid_argument);
}

TEST(GeometricGrid, Halves) {
  const auto g = geometric_h_grid(0.1, 4);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_DOUBLE_EQ(g[3], 0.0125);
}
