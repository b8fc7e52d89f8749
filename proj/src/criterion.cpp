#include "zetaforms/criterion.hpp"

#include "zetaforms/errors.hpp"
#include "zetaforms/hurwitz.hpp"

namespace zetaforms {

Real zeta_ratio(long prec) {
  const long wp = prec + 16;
  return round_to(riemann_zeta(2, wp) * riemann_zeta(3, wp) / riemann_zeta(6, wp), prec);
}

namespace {

void check_domain(const Real& r, long M, const std::vector<long>& deltas) {
  // need r M + delta_1 > 0
  if (!(r * M + deltas.front() > 0))
    throw std::domain_error("r must exceed -delta_1/M");
}

}  // namespace

Real G_val(const Real& r, long M, const std::vector<long>& deltas, const Real& varpi_v,
           long prec) {
  check_domain(r, M, deltas);
  const long wp = prec + 32;
  const long J = static_cast<long>(deltas.size());
  Real acc = -2 * varpi_v + Real::of(2 * J * (M - 2 * deltas.front()), wp);
  for (long d : deltas) {
    long md = M - 2 * d;
    if (md > 1) acc += Real::of(2 * md, wp) * log(Real::of(md, wp));
  }
  Real rM = r * M;
  for (long d : deltas)
    acc -= (M - 2 * d) * (log(rM + (M - d)) + log(rM + d));
  return round_to(acc, prec);
}

Real F_val(const Real& r, long M, const std::vector<long>& deltas, const Real& varpi_v,
           long prec) {
  check_domain(r, M, deltas);
  const long wp = prec + 32;
  const long J = static_cast<long>(deltas.size());
  Real rM = r * M;
  Real acc(wp);
  for (long d : deltas) {
    Real a = rM + (M - d);  // (r+1) M - delta_j
    Real b = rM + d;        // r M + delta_j
    acc += a * log(a) - b * log(b);
    long md = M - 2 * d;
    if (md > 1) acc -= Real::of(md, wp) * log(Real::of(md, wp));
  }
  acc += varpi_v - Real::of(J * (M - 2 * deltas.front()), wp);
  return round_to(acc / ((2 * r + 1) * Real::of(M * J, wp)), prec);
}

Real solve_r0(long M, const std::vector<long>& deltas, const Real& varpi_v, long prec) {
  const long wp = prec + 32;
  // G is strictly decreasing with G -> +inf at the left endpoint -delta_1/M.
  Real left = -Real::of(deltas.front(), wp) / M;
  Real eps = pow2(-8, wp) / M;
  Real lo = left + eps;
  for (int iter = 0; iter < 200 && !(G_val(lo, M, deltas, varpi_v, wp) > 0); ++iter) {
    eps /= 2;
    lo = left + eps;
  }
  if (!(G_val(lo, M, deltas, varpi_v, wp) > 0))
    throw CheckFailure("failed to bracket r0 from the left");
  Real hi = lo + 1;
  bool found = false;
  for (int iter = 0; iter < 256; ++iter) {
    if (G_val(hi, M, deltas, varpi_v, wp) < 0) {
      found = true;
      break;
    }
    hi = left + (hi - left) * 2;
  }
  if (!found) throw CheckFailure("failed to bracket r0 from the right");

  const Real relw = pow2(-(prec - 4), wp);
  for (int iter = 0; iter < 4 * prec + 256; ++iter) {
    Real mid = (lo + hi) / 2;
    if (hi - lo <= relw * (abs(mid) + Real::of(1L, wp))) return round_to(mid, prec);
    if (G_val(mid, M, deltas, varpi_v, wp) > 0)
      lo = mid;
    else
      hi = mid;
  }
  throw CheckFailure("bisection for r0 did not converge");
}

Real c0_constant(long M, const std::vector<long>& deltas, const Real& varpi_v,
                 const Real& r0, long prec) {
  if (!(r0 > 0)) throw std::domain_error("theorem inapplicable: r0 <= 0");
  const long wp = prec + 32;
  const long J = static_cast<long>(deltas.size());
  Real rM = r0 * M;
  Real acc(wp);
  for (long d : deltas) acc += log((rM + (M - d)) / (rM + d));
  Real zr = zeta_ratio(wp);
  Real c0 = sqrt(2 * zr * acc / J);

  // equal by G(r0) = 0 to the variational form
  Real alt = sqrt(4 * zr * F_val(r0, M, deltas, varpi_v, wp));
  if (!(abs(c0 - alt) <= pow2(-(prec / 4), wp)))
    throw CheckFailure("C0 closed form disagrees with sqrt(4 zr F(r0))");
  return round_to(c0, prec);
}

CriterionReport compute_constants(long M, const std::vector<long>& deltas, long prec,
                                  const OmegaTableOptions& opts) {
  CriterionReport rep;
  rep.prec = prec;
  rep.varpi = varpi(M, deltas, prec, opts);
  rep.r0 = solve_r0(M, deltas, rep.varpi, prec);
  rep.F_r0 = F_val(rep.r0, M, deltas, rep.varpi, prec);
  rep.zeta_ratio_v = zeta_ratio(prec);
  rep.C0 = c0_constant(M, deltas, rep.varpi, rep.r0, prec);
  rep.c_max = round_to(sqrt(4 * rep.F_r0 / rep.zeta_ratio_v), prec);
  rep.r0_rational = rational_approx(rep.r0, 1000000);
  return rep;
}

ConditionReport check_condition(const ProofParameters& params, const Real& c,
                                const SieveSets& sieve, const AsymptoticsReport& asym,
                                const Real& varpi_v, long prec) {
  if (!params.s) throw std::invalid_argument("condition check requires s");
  (void)sieve;
  const long wp = prec + 32;
  ConditionReport rep;
  Real inner = -varpi_v / params.J + Real::of(params.M - 2 * params.deltas.front(), wp);
  rep.margin = round_to(asym.log_g_x0 + Real::of(*params.s, wp) * inner, prec);
  rep.shrinks = rep.margin < 0;

  Real rreal = Real::of(params.r, wp);
  Real F = F_val(rreal, params.M, params.deltas, varpi_v, wp);
  Real zr = zeta_ratio(wp);
  Real bound2 = 4 * F / zr;
  rep.c_bound = bound2 > 0 ? round_to(sqrt(bound2), prec) : Real(prec);
  rep.c_admissible = (bound2 > 0) && (c * c < bound2);
  return rep;
}

}  // namespace zetaforms
