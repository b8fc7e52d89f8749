#include "zetaforms/hurwitz.hpp"

#include <stdexcept>

#include "zetaforms/omega.hpp"

namespace zetaforms {

namespace {

// Euler-Maclaurin with the index base shifted to N. Returns false if the
// asymptotic block failed to drop below target (N too small).
bool em_attempt(long i, const BigRational& alpha, long N, long wp, const Real& target,
                Real& out) {
  Real A = Real::of(alpha, wp);
  Real direct(wp);
  for (long m = 0; m < N; ++m) direct += pow_si(A + m, -i);

  Real X = A + N;
  Real res = pow_si(X, -(i - 1)) / (i - 1) + pow_si(X, -i) / 2;
  Real X2 = X * X;
  Real invpow = pow_si(X, -(i + 1));
  Real poch = Real::of(i, wp);  // rising factorial (i)_{2j-1}
  BigInt fact = 2;              // (2j)!
  for (long j = 1; j <= 2048; ++j) {
    Real term = Real::of(bernoulli_2j(j), wp) / Real::of(fact, wp) * poch * invpow;
    res += term;
    // f(x) = (x+alpha)^-i is completely monotone, so the expansion envelops
    // and the error is below the first omitted term.
    if (abs(term) < target) {
      out = direct + res;
      return true;
    }
    poch *= (i + 2 * j - 1);
    poch *= (i + 2 * j);
    fact *= (2 * j + 1) * (2 * j + 2);
    invpow /= X2;
  }
  return false;
}

}  // namespace

Real hurwitz_zeta(long i, const BigRational& alpha, long prec) {
  if (i < 2) throw std::domain_error("hurwitz_zeta requires i >= 2");
  if (alpha <= 0) throw std::domain_error("hurwitz_zeta requires alpha > 0");
  // For alpha < 1 the value is of order alpha^-i; widen the significand so the
  // absolute error contract still holds.
  double la = rational_log2_abs(alpha);
  long extra = la < 0 ? static_cast<long>(-la * i) + 8 : 0;
  const long wp = prec + 48 + extra;
  const Real target = pow2(-(prec + 24));

  long need = static_cast<long>(0.13 * wp) + static_cast<long>(0.35 * i) + 8;
  BigInt fl = rational_floor(alpha);
  long N = 0;
  if (fl < need) N = need - fl.get_si();

  Real out(wp);
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (em_attempt(i, alpha, N, wp, target, out)) return round_to(out, prec);
    N = 2 * N + 32;
  }
  throw std::runtime_error("hurwitz_zeta: Euler-Maclaurin did not converge");
}

Real riemann_zeta(long i, long prec) { return hurwitz_zeta(i, BigRational(1), prec); }

}  // namespace zetaforms
