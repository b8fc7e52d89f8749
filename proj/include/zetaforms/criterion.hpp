#pragma once

#include "zetaforms/asymptotics.hpp"
#include "zetaforms/omega.hpp"
#include "zetaforms/params.hpp"

namespace zetaforms {

/// zeta(2) zeta(3) / zeta(6) = 1.9435964...
Real zeta_ratio(long prec);

/// The derivative criterion G and the objective F, both as functions of the
/// shift r on (-delta_1/M, +infinity).
Real G_val(const Real& r, long M, const std::vector<long>& deltas, const Real& varpi_v,
           long prec);
Real F_val(const Real& r, long M, const std::vector<long>& deltas, const Real& varpi_v,
           long prec);

/// Unique root of G (G is strictly decreasing), by bisection with bracket
/// expansion.
Real solve_r0(long M, const std::vector<long>& deltas, const Real& varpi_v, long prec);

/// C0 from the closed form; cross-checked against sqrt(4 (zeta ratio) F(r0)).
/// Requires r0 > 0.
Real c0_constant(long M, const std::vector<long>& deltas, const Real& varpi_v,
                 const Real& r0, long prec);

struct CriterionReport {
  Real varpi;
  Real r0;
  Real F_r0;
  Real C0;
  Real c_max;       // the bound on c from the criterion inequality
  Real zeta_ratio_v;
  BigRational r0_rational;  // convergent with denominator <= 10^6
  long prec = 0;
};

/// Full constants pipeline for (M, deltas): omega table, varpi, r0, C0.
CriterionReport compute_constants(long M, const std::vector<long>& deltas, long prec,
                                  const OmegaTableOptions& opts = {});

struct ConditionReport {
  bool shrinks = false;  // log g(x0) + s(-varpi/J + (M - 2 delta_1)) < 0
  Real margin;           // that left-hand side
  bool c_admissible = false;  // c^2 < 4 F(r) / zeta_ratio at r = params.r
  Real c_bound;
};

ConditionReport check_condition(const ProofParameters& params, const Real& c,
                                const SieveSets& sieve, const AsymptoticsReport& asym,
                                const Real& varpi_v, long prec);

}  // namespace zetaforms
