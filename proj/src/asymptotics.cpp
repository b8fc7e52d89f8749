#include "zetaforms/asymptotics.hpp"

#include <sstream>

#include "zetaforms/errors.hpp"
#include "zetaforms/omega.hpp"

namespace zetaforms {

namespace {

void require_s(const ProofParameters& p, long s) {
  if (s < 1 || s % (2 * p.J) != 0)
    throw std::invalid_argument("s must be a positive multiple of 2J");
}

}  // namespace

Real log_f(const Real& x, const ProofParameters& p, const SieveSets& sv, long s, long prec) {
  require_s(p, s);
  if (!(x > 0)) throw std::domain_error("log_f requires x > 0");
  const long wp = prec + 32;
  const long sJ = s / p.J;
  Real rM = Real::of(p.r * p.M, wp);
  Real trM = Real::of((2 * p.r + 1) * p.M, wp);  // (2r+1) M
  Real acc = Real::of(sv.z_count(), wp) * (log(trM + x) - log(x));
  acc += log(rM + x) - log(rM + Real::of(p.M, wp) + x);
  for (long d : p.deltas)
    acc += sJ * (log(rM + d + x) - log(rM + (p.M - d) + x));
  return round_to(acc, prec);
}

Real u_val(const Real& x, const ProofParameters& p, const SieveSets& sv, long s, long prec) {
  require_s(p, s);
  if (!(x > 0)) throw std::domain_error("u is defined on x > 0");
  const long wp = prec + 32;
  const long sJ = s / p.J;
  Real rM = Real::of(p.r * p.M, wp);
  Real r1M = rM + p.M;  // (r+1) M
  Real acc = -Real::of((2 * p.r + 1) * p.M * sv.z_count(), wp);
  acc += p.M * (1 - (rM * r1M) / ((rM + x) * (r1M + x)));
  for (long d : p.deltas) {
    Real a = rM + d;
    Real b = r1M - d;
    acc += (sJ * (p.M - 2 * d)) * (1 - (a * b) / ((a + x) * (b + x)));
  }
  return round_to(acc, prec);
}

Real log_g(const Real& x, const ProofParameters& p, const SieveSets& sv, long s, long prec) {
  require_s(p, s);
  if (!(x > 0)) throw std::domain_error("log_g requires x > 0");
  const long wp = prec + 32;
  const long sJ = s / p.J;
  const long zc = sv.z_count();
  Real rM = Real::of(p.r * p.M, wp);
  Real r1M = rM + p.M;
  Real trM = Real::of((2 * p.r + 1) * p.M, wp);

  Real acc = sv.a1.log_value(wp) + sv.a2.log_value(wp);
  acc += Real::of((2 * p.r + 1) * p.M * zc - p.M, wp) * log(Real::of(p.den_r(), wp));
  for (long d : p.deltas) {
    long md = p.M - 2 * d;
    if (md > 1) acc += Real::of(sJ * md, wp) * log(Real::of(md, wp));
  }
  acc += Real::of((2 * p.r + 1) * p.M * zc, wp) * log(trM + x);
  acc += rM * log(rM + x) - r1M * log(r1M + x);
  for (long d : p.deltas) {
    Real a = rM + d;
    Real b = r1M - d;
    acc += sJ * (a * log(a + x) - b * log(b + x));
  }
  return round_to(acc, prec);
}

AsymptoticsReport solve_roots(const ProofParameters& p, const SieveSets& sv, long s,
                              long prec) {
  require_s(p, s);
  const long wp = prec + 32;
  AsymptoticsReport rep;
  rep.prec = prec;

  const BigRational zq = (2 * p.r + 1) * p.M * sv.z_count();  // (2r+1) M |Z|
  if (BigRational(s) > zq) {
    BigRational x2q = (2 * p.r + 1) * (2 * p.r + 1) * p.M * p.M * sv.z_count() /
                      (BigRational(s) - zq);
    rep.x2 = Real::of(x2q, wp);
    rep.x2_finite = true;
  } else {
    rep.x2 = Real(wp);
    rep.x2_finite = false;
  }

  auto bisect = [&](auto&& fn, Real lo, Real hi, const char* what) -> Real {
    // fn < 0 at lo, > 0 at hi; shrink to relative width 2^-(prec-4)
    const Real relw = pow2(-(prec - 4), wp);
    for (int iter = 0; iter < 4 * prec + 256; ++iter) {
      Real mid = (lo + hi) / 2;
      if (hi - lo <= relw * abs(mid)) return mid;
      if (fn(mid) < 0)
        lo = mid;
      else
        hi = mid;
    }
    throw CheckFailure(std::string("bisection failed to converge for ") + what);
  };

  auto u_of = [&](const Real& x) { return u_val(x, p, sv, s, wp); };
  Real lo = pow2(-40, wp);
  if (!(u_of(lo) < 0))
    throw CheckFailure("u(0+) is not negative; cannot bracket x1");
  Real hi(wp);
  if (rep.x2_finite && u_of(rep.x2) > 0) {
    hi = rep.x2;
  } else {
    hi = Real::of(1L, wp);
    bool found = false;
    for (int iter = 0; iter < 256; ++iter) {
      if (u_of(hi) > 0) {
        found = true;
        break;
      }
      hi *= 2;
    }
    if (!found) {
      std::ostringstream os;
      os << "failed to bracket the root of u: u(" << hi.to_double()
         << ") = " << u_of(hi).to_double();
      throw CheckFailure(os.str());
    }
  }
  rep.x1 = bisect(u_of, lo, hi, "x1");

  auto negf = [&](const Real& x) { return -log_f(x, p, sv, s, wp); };
  if (!(negf(lo) < 0)) throw CheckFailure("f(0+) is not above 1; cannot bracket x0");
  if (!(negf(rep.x1) > 0)) {
    std::ostringstream os;
    os << "f(x1) is not below 1 (log f(x1) = " << log_f(rep.x1, p, sv, s, wp).to_double()
       << "); cannot bracket x0";
    throw CheckFailure(os.str());
  }
  rep.x0 = bisect(negf, lo, rep.x1, "x0");
  rep.log_g_x0 = log_g(rep.x0, p, sv, s, prec);
  rep.x0 = round_to(rep.x0, prec);
  rep.x1 = round_to(rep.x1, prec);
  if (rep.x2_finite) rep.x2 = round_to(rep.x2, prec);
  return rep;
}

}  // namespace zetaforms
