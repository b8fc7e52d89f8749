#include "zetaforms/elimination.hpp"

#include <algorithm>
#include <map>

#include "zetaforms/errors.hpp"
#include "zetaforms/hurwitz.hpp"

namespace zetaforms {

BigInt WeightVector::constraint_sum(long i) const {
  BigInt acc = 0;
  for (size_t t = 0; t < psi.size(); ++t) {
    BigInt bp;
    mpz_ui_pow_ui(bp.get_mpz_t(), static_cast<unsigned long>(psi[t]),
                  static_cast<unsigned long>(i));
    acc += weights[t] * bp;
  }
  return acc;
}

std::vector<long> default_eliminated(const std::vector<long>& psi, long s) {
  const long want = static_cast<long>(psi.size()) - 2;
  if (want < 0) throw std::invalid_argument("psi must have at least two elements");
  std::vector<long> I;
  for (long i = s - 1; i >= 3 && static_cast<long>(I.size()) < want; i -= 2)
    I.push_back(i);
  if (static_cast<long>(I.size()) != want)
    throw std::invalid_argument("not enough odd indices in [3, s-1] to eliminate");
  std::sort(I.begin(), I.end());
  return I;
}

WeightVector integer_weights(const std::vector<long>& psi, const std::vector<long>& I) {
  const long ncols = static_cast<long>(psi.size());
  if (ncols < 2) throw std::invalid_argument("psi must have at least two elements");
  if (static_cast<long>(I.size()) != ncols - 2)
    throw std::invalid_argument("need |I| = |psi| - 2");
  for (size_t t = 0; t < psi.size(); ++t) {
    if (psi[t] < 1 || (t && psi[t] == psi[t - 1]))
      throw std::invalid_argument("psi must be distinct positive integers");
  }
  for (size_t t = 0; t < I.size(); ++t) {
    if (I[t] < 3 || I[t] % 2 == 0 || (t && I[t] == I[t - 1]))
      throw std::invalid_argument("I must be distinct odd integers >= 3");
  }

  std::vector<long> rows;
  rows.push_back(0);
  rows.insert(rows.end(), I.begin(), I.end());
  const long nrows = static_cast<long>(rows.size());  // = ncols - 1

  // exact Gaussian elimination over Q
  std::vector<std::vector<BigRational>> A(nrows, std::vector<BigRational>(ncols));
  for (long ri = 0; ri < nrows; ++ri) {
    for (long ci = 0; ci < ncols; ++ci) {
      BigInt bp;
      mpz_ui_pow_ui(bp.get_mpz_t(), static_cast<unsigned long>(psi[ci]),
                    static_cast<unsigned long>(rows[ri]));
      A[ri][ci] = BigRational(bp);
    }
  }

  std::vector<long> pivot_col(nrows, -1);
  long rank = 0;
  for (long col = 0; col < ncols && rank < nrows; ++col) {
    long pr = -1;
    for (long ri = rank; ri < nrows; ++ri) {
      if (A[ri][col] != 0) {
        pr = ri;
        break;
      }
    }
    if (pr < 0) continue;
    std::swap(A[rank], A[pr]);
    BigRational inv = BigRational(1) / A[rank][col];
    for (long ci = col; ci < ncols; ++ci) A[rank][ci] *= inv;
    for (long ri = 0; ri < nrows; ++ri) {
      if (ri == rank || A[ri][col] == 0) continue;
      BigRational factor = A[ri][col];
      for (long ci = col; ci < ncols; ++ci) A[ri][ci] -= factor * A[rank][ci];
    }
    pivot_col[rank] = col;
    ++rank;
  }
  if (rank != nrows)
    throw CheckFailure("nullspace dimension exceeds 1: Vandermonde system is singular");

  // one free column -> one kernel vector
  long free_col = -1;
  {
    std::vector<char> is_pivot(ncols, 0);
    for (long ri = 0; ri < nrows; ++ri) is_pivot[pivot_col[ri]] = 1;
    for (long ci = 0; ci < ncols; ++ci)
      if (!is_pivot[ci]) free_col = ci;
  }
  std::vector<BigRational> x(ncols, BigRational(0));
  x[free_col] = 1;
  for (long ri = nrows - 1; ri >= 0; --ri) {
    BigRational acc(0);
    for (long ci = pivot_col[ri] + 1; ci < ncols; ++ci) acc += A[ri][ci] * x[ci];
    x[pivot_col[ri]] = -acc;
  }

  // clear denominators, divide by gcd, normalize the leading sign
  BigInt lcm = 1;
  for (const auto& q : x) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
  std::vector<BigInt> w(ncols);
  BigInt g = 0;
  for (long ci = 0; ci < ncols; ++ci) {
    BigRational scaled = x[ci] * BigRational(lcm);
    w[ci] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w[ci].get_mpz_t());
  }
  if (g == 0) throw CheckFailure("kernel vector vanished");
  for (auto& wi : w) wi /= g;
  for (auto& wi : w) {
    if (wi != 0) {
      if (wi < 0)
        for (auto& wj : w) wj = -wj;
      break;
    }
  }

  WeightVector wv;
  wv.psi = psi;
  wv.weights = std::move(w);
  wv.eliminated = I;
  if (wv.constraint_sum(1) == 0)
    throw CheckFailure("degenerate weights: sum w_b b vanishes");
  return wv;
}

EliminationWitness assemble_elimination_sum(const WeightVector& wv,
                                            const ProofParameters& params,
                                            const SieveSets& sieve, long n, long prec) {
  if (!params.s) throw std::invalid_argument("assembling the eliminated sum requires s");
  FactoredForm form = build_rational_function(n, params, sieve);
  PartialFractionTable table = partial_fractions(form);

  // distinct reduced theta values k/b needed on either side
  std::vector<BigRational> thetas;
  for (long b : wv.psi)
    for (long k = 1; k <= b; ++k) thetas.push_back(make_rational(k, b));
  std::sort(thetas.begin(), thetas.end());
  thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());

  std::map<BigRational, Real> series;
  for (const BigRational& th : thetas)
    series.emplace(th, evaluate_series(form, th, prec, &table));

  const long wp = prec + 32;
  Real lhs(wp);
  for (size_t t = 0; t < wv.psi.size(); ++t) {
    const long b = wv.psi[t];
    Real inner(wp);
    for (long k = 1; k <= b; ++k) inner += series.at(make_rational(k, b));
    lhs += Real::of(BigRational(wv.weights[t]), wp) * inner;
  }

  LinearForm lf = linear_form_coeffs(table, thetas);
  Real rhs(wp);
  for (size_t t = 0; t < wv.psi.size(); ++t) {
    const long b = wv.psi[t];
    Real inner(wp);
    for (long k = 1; k <= b - 1; ++k) inner += Real::of(lf.rho0_at(make_rational(k, b)), wp);
    rhs += Real::of(BigRational(wv.weights[t]), wp) * inner;
  }
  for (long i = 3; i <= *params.s - 1; i += 2) {
    if (std::binary_search(wv.eliminated.begin(), wv.eliminated.end(), i)) continue;
    BigInt coeff = wv.constraint_sum(i);
    if (coeff == 0) continue;
    rhs += Real::of(BigRational(coeff) * lf.rho_odd.at(i), wp) * riemann_zeta(i, wp);
  }

  EliminationWitness ew;
  ew.n = n;
  ew.weighted_sum = round_to(lhs, prec);
  ew.predicted = round_to(rhs, prec);
  ew.residual = abs(ew.weighted_sum - ew.predicted);
  return ew;
}

}  // namespace zetaforms
