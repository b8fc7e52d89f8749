#pragma once

#include <map>
#include <utility>
#include <vector>

#include "zetaforms/arith.hpp"
#include "zetaforms/params.hpp"
#include "zetaforms/sieve.hpp"

namespace zetaforms {

// R_n(t) in fully factored form: an exact rational scalar, the (A1 A2)^n
// prime-power block, and linear factors grouped into integer-spaced runs
// prod_{v=0}^{count-1} (t + first + v)^{mult}. The function is never expanded.
struct FactoredForm {
  struct Run {
    BigRational first;
    long count = 0;
    long mult = 0;
  };

  long n = 0;
  long s = 0;
  long M = 1;
  std::vector<long> deltas;
  BigRational r;
  long B = 1;
  std::vector<BigRational> thetas;  // all of Z_B, ascending; last is 1

  BigRational scalar;              // factorial ratio
  PrimePowerProduct power_scalar;  // (A1 A2)^n, integral for admissible n
  std::vector<Run> runs;
  bool extra_linear = true;  // the stray (2t + Mn) factor
  long degree = 0;
  long k_min = 0, k_max = 0;  // pole window [delta_1 n, (M - delta_1) n]
  long rMn = 0;

  /// Consolidated (shift, multiplicity) view of the linear factors
  /// (extra_linear not included).
  std::vector<std::pair<BigRational, long>> factors() const;

  /// Exact evaluation; throws std::domain_error at a pole.
  BigRational eval_exact(const BigRational& t) const;

  /// Order of the pole at t = -k (0 when regular there).
  long pole_order(long k) const;

  long total_linear_factors() const;
};

FactoredForm build_rational_function(long n, const ProofParameters& p, const SieveSets& sv);

// Dense exact table of the partial-fraction coefficients a[i][k] of R_n,
// 1 <= i <= s, k_min <= k <= k_max; structural zeros are stored explicitly.
struct PartialFractionTable {
  long n = 0, s = 0, k_min = 0, k_max = 0;
  std::vector<std::vector<BigRational>> coef;  // coef[k - k_min][i - 1]

  const BigRational& at(long i, long k) const;
  BigRational reconstruct_at(const BigRational& t) const;
  /// a[1][k] summed over k; zero whenever the degree is at most -2.
  BigRational residue_sum() const;
  double max_log2_abs() const;
};

PartialFractionTable partial_fractions(const FactoredForm& form, bool parallel = true);

// Coefficients of S_{n,theta} as a linear form in Hurwitz zeta values.
struct LinearForm {
  long n = 0, s = 0;
  std::map<long, BigRational> rho_odd;                    // odd i in [3, s-1]
  std::vector<std::pair<BigRational, BigRational>> rho0;  // (theta, rho_{0,theta})

  const BigRational& rho0_at(const BigRational& theta) const;
};

LinearForm linear_form_coeffs(const PartialFractionTable& table,
                              const std::vector<BigRational>& thetas);

/// S_{n,theta} = sum_{m >= 0} R_n(m + theta), to absolute accuracy
/// 2^-(prec-8) scaled by max(1, |S|). Terms are summed directly from the
/// factored form up to a rigorously bounded cutoff; when that cutoff is out of
/// reach, the tail beyond a short head is folded through the partial-fraction
/// expansion (digamma for the simple poles, Hurwitz zeta above). Passing a
/// precomputed table avoids rebuilding it on that path.
Real evaluate_series(const FactoredForm& form, const BigRational& theta, long prec,
                     const PartialFractionTable* table = nullptr);

/// Taylor coefficients (orders 0..L) of scalar * prod (t + shift)^mult around
/// t = t0. Factors with shift + t0 == 0 must have positive multiplicity.
std::vector<BigRational> taylor_at(const BigRational& scalar,
                                   const std::vector<std::pair<BigRational, long>>& factors,
                                   const BigRational& t0, long L);

}  // namespace zetaforms
