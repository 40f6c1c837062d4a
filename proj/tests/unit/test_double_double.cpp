#include <cmath>

#include "qzeta/double_double.hpp"
#include "test_support.hpp"

using qzeta::ComplexDD;
using qzeta::DoubleDouble;

TEST(DoubleDouble, KeepsLowOrderBits) {
  DoubleDouble x(1.0);
  x += 1e-20;
  x -= 1.0;
  EXPECT_DOUBLE_EQ(x.to_double(), 1e-20);
}

TEST(DoubleDouble, ThirdTimesThree) {
  const DoubleDouble third = DoubleDouble(1.0) / 3.0;
  const DoubleDouble back = third * 3.0 - 1.0;
  EXPECT_LT(std::abs(back.to_double()), 1e-31);
}

TEST(DoubleDouble, ExpLogRoundTrip) {
  for (double x : {-20.0, -1.5, -1e-3, 0.25, 3.0, 40.0}) {
    const DoubleDouble e = exp(DoubleDouble(x));
    EXPECT_NEAR(e.to_double(), std::exp(x), 4e-16 * std::exp(x));
    const DoubleDouble back = log(e) - x;
    EXPECT_LT(std::abs(back.to_double()), 1e-29 * std::max(1.0, std::abs(x)));
  }
}

TEST(DoubleDouble, SinCosIdentity) {
  for (double x : {-7.0, -0.3, 0.0, 1.0, 2.5, 100.0}) {
    DoubleDouble s, c;
    sincos(DoubleDouble(x), s, c);
    EXPECT_NEAR(s.to_double(), std::sin(x), 1e-15);
    EXPECT_NEAR(c.to_double(), std::cos(x), 1e-15);
    const DoubleDouble one = s * s + c * c - 1.0;
    EXPECT_LT(std::abs(one.to_double()), 1e-30);
  }
}

TEST(ComplexDD, MultiplyDivide) {
  const ComplexDD a{DoubleDouble(1.5), DoubleDouble(-2.0)};
  const ComplexDD b{DoubleDouble(0.25), DoubleDouble(3.0)};
  const std::complex<double> p = (a * b).to_complex();
  EXPECT_NEAR(p.real(), 1.5 * 0.25 + 6.0, 1e-15);
  EXPECT_NEAR(p.imag(), 4.5 - 0.5, 1e-15);
  const std::complex<double> back = ((a * b) / b).to_complex();
  EXPECT_NEAR(back.real(), 1.5, 1e-15);
  EXPECT_NEAR(back.imag(), -2.0, 1e-15);
}
