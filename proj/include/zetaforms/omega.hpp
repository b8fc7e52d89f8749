#pragma once

#include <cstdint>
#include <vector>

#include "zetaforms/arith.hpp"
#include "zetaforms/params.hpp"

namespace zetaforms {

// Exact piecewise-constant representation of omega restricted to [0,1].
// breakpoints are strictly increasing with first 0 and last 1; values[i] is
// the constant on the open interval (breakpoints[i], breakpoints[i+1]);
// point_values[i] is the value at breakpoints[i] itself.
struct StepFunction {
  std::vector<BigRational> breakpoints;
  std::vector<int> values;
  std::vector<int> point_values;

  int value_at(const BigRational& x) const;
  int max_value() const;
};

/// Reference evaluation of omega(x): minimizes the floor sum over y by
/// enumerating every jump candidate and the midpoints between them, all in
/// exact rational arithmetic. Works for arbitrary rational x > 0.
int omega_at_ref(const BigRational& x, long M, const std::vector<long>& deltas);

/// Fast kernel for x = num/den with machine-word den > 0. Same value as the
/// reference; reduces the minimization to counting open circular arcs whose
/// endpoints all lie on the lattice Z/den.
int omega_at(long num, long den, long M, const std::vector<long>& deltas);

/// Dispatches to the fast kernel when x fits machine words, else the reference.
int omega_at(const BigRational& x, long M, const std::vector<long>& deltas);
int omega_at(const BigRational& x, const ProofParameters& p);

struct OmegaTableOptions {
  bool parallel = true;
  int validation_samples = 1000;
  std::uint64_t seed = 0x00c0ffee5eedULL;
  long validation_max_den = 1000000;
};

/// Exact table of omega on [0,1]. The breakpoint superset is every reduced
/// fraction of denominator <= 2M; a randomized agreement pass against
/// omega_at_ref guards that claim and throws on any mismatch.
StepFunction omega_table(long M, const std::vector<long>& deltas,
                         const OmegaTableOptions& opts = {});
StepFunction omega_table(const ProofParameters& p, const OmegaTableOptions& opts = {});

/// Product over primes sqrt(Mn) < p <= (M - 2 delta_1) n of p^{omega(n/p)}.
PrimePowerProduct phi_product(long n, long M, const std::vector<long>& deltas,
                              bool parallel = true);
PrimePowerProduct phi_product(long n, const ProofParameters& p, bool parallel = true);
/// log of the same product, in double precision (for growth-rate checks).
double log_phi_product(long n, long M, const std::vector<long>& deltas,
                       bool parallel = true);

/// psi(x) = Gamma'(x)/Gamma(x) for rational x > 0, by upward recurrence into
/// the Stirling regime; relative error within 2^-(prec-8).
Real digamma(const BigRational& x, long prec);

/// varpi = int_0^1 omega d(psi) - int_0^{1/(M-2 delta_1)} omega dx/x^2,
/// evaluated exactly against the step table (the first interval must carry 0).
Real varpi_from_table(const StepFunction& table, long M, const std::vector<long>& deltas,
                      long prec, bool parallel = true);
Real varpi(long M, const std::vector<long>& deltas, long prec,
           const OmegaTableOptions& opts = {});
Real varpi(const ProofParameters& p, long prec, const OmegaTableOptions& opts = {});

/// Rounds to a fresh Real of exactly `prec` bits.
Real round_to(const Real& x, long prec);

}  // namespace zetaforms
