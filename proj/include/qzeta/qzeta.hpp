#pragma once

#include "qzeta/types.hpp"
#include "qzeta/double_double.hpp"
#include "qzeta/num_kernel.hpp"
#include "qzeta/quadrature.hpp"
#include "qzeta/bernoulli.hpp"
#include "qzeta/q_zeta.hpp"
#include "qzeta/qbernoulli.hpp"
#include "qzeta/classical_zeta.hpp"
#include "qzeta/euler_lab.hpp"
