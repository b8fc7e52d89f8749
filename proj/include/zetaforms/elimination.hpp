#pragma once

#include <vector>

#include "zetaforms/forms.hpp"

namespace zetaforms {

// Integer weights w_b over psi with sum w_b b^i = 0 for i in {0} union I and
// sum w_b b != 0; primitive (gcd 1) and sign-normalized.
struct WeightVector {
  std::vector<long> psi;
  std::vector<BigInt> weights;
  std::vector<long> eliminated;  // the index set I, ascending

  BigInt constraint_sum(long i) const;  // sum w_b b^i
};

/// Solves the generalized Vandermonde system exactly (rational Gaussian
/// elimination; the nullspace must be one-dimensional).
WeightVector integer_weights(const std::vector<long>& psi, const std::vector<long>& I);

/// Default elimination set when none is given: the |psi| - 2 largest odd
/// indices in [3, s-1].
std::vector<long> default_eliminated(const std::vector<long>& psi, long s);

struct EliminationWitness {
  long n = 0;
  Real weighted_sum;  // sum_b w_b sum_{k=1..b} S_{n,k/b}
  Real predicted;     // the rho/zeta combination it must equal
  Real residual;
};

/// Computes both sides of the eliminated linear-form identity independently
/// and returns the witness.
EliminationWitness assemble_elimination_sum(const WeightVector& wv,
                                            const ProofParameters& params,
                                            const SieveSets& sieve, long n, long prec);

}  // namespace zetaforms
