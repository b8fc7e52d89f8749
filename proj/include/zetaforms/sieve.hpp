#pragma once

#include <vector>

#include "zetaforms/arith.hpp"

namespace zetaforms {

// The base-point sets Psi_B (integers with totient at most B) and Z_B (reduced
// fractions in (0,1] with denominator in Psi_B), together with the
// normalization factors A1, A2 and the period that makes A1^n, A2^n integers.
struct SieveSets {
  long B = 0;
  std::vector<long> psi;          // ascending
  std::vector<BigRational> z;     // ascending, last element is 1
  BigInt period;                  // 2 den(r) lcm{p-1 : p | b, b in psi}
  PrimePowerProduct a1, a2;

  long z_count() const { return static_cast<long>(z.size()); }
  bool divides_period(long n) const;
};

/// Builds all of the above for a given B, M and r > 0.
SieveSets build_sieve_sets(long B, long M, const BigRational& r);

}  // namespace zetaforms
