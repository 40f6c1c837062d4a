// Watch zeta_q approach zeta as q -> 1.

#include <cstdio>

#include "qzeta/qzeta.hpp"

using namespace qzeta;

int main() {
  std::printf("q        zeta_q(-1)          zeta_q(1/2)\n");
  for (const QParam& q : default_q_grid()) {
    std::printf("%-8.6g %-19.15g %.15g\n", q.value(), zeta_q_nonpositive(1, q), zeta_q(0.5, q).value.real());
  }
  const auto neg = theorem1_limit(1);
  const auto half = theorem2_limit(0.5);
  std::printf("limit    %-19.15g %.15g\n", neg.limit.real(), half.limit.real());
  std::printf("zeta     %-19.15g %.15g\n", -1.0 / 12.0, zeta_em(0.5).real());

  // q-Bernoulli numbers drift toward the classical ones
  const QParam q(0.99);
  for (std::size_t m = 0; m <= 6; ++m) {
    std::printf("B_%zu(0.99) = %-12.8f B_%zu = %.8f\n", m, q_bernoulli(m, q), m, to_double(bernoulli_number(m)));
  }
}
