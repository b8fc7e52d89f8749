#pragma once

#include "zetaforms/arith.hpp"

namespace zetaforms {

/// zeta(i, alpha) = sum_{m >= 0} (m + alpha)^-i for integer i >= 2 and
/// rational alpha > 0, by Euler-Maclaurin with an enveloping remainder;
/// absolute error within 2^-(prec-8).
Real hurwitz_zeta(long i, const BigRational& alpha, long prec);

/// zeta(i) = hurwitz_zeta(i, 1).
Real riemann_zeta(long i, long prec);

}  // namespace zetaforms
