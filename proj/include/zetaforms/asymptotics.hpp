#pragma once

#include "zetaforms/params.hpp"
#include "zetaforms/sieve.hpp"

namespace zetaforms {

// Saddle data for the growth rate of the linear forms: x1 is the root of u,
// x0 the root of f = 1 (0 < x0 < x1), x2 the a-priori bound (infinite when
// s <= (2r+1) M |Z|), and log_g_x0 = log g(x0) the growth rate itself.
struct AsymptoticsReport {
  Real x0, x1, x2;
  bool x2_finite = true;
  Real log_g_x0;
  long prec = 0;
};

Real log_f(const Real& x, const ProofParameters& p, const SieveSets& sv, long s, long prec);
Real log_g(const Real& x, const ProofParameters& p, const SieveSets& sv, long s, long prec);
Real u_val(const Real& x, const ProofParameters& p, const SieveSets& sv, long s, long prec);

/// Bisection for x1 and x0 (monotone brackets), then log g at x0.
AsymptoticsReport solve_roots(const ProofParameters& p, const SieveSets& sv, long s,
                              long prec);

}  // namespace zetaforms
