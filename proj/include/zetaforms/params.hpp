#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zetaforms/arith.hpp"

namespace zetaforms {

// The tuple (M, J, delta_1..delta_J, r, s, B) everything else is built from.
struct ProofParameters {
  long M = 1;
  long J = 1;
  std::vector<long> deltas = {0};
  BigRational r = BigRational(1);
  std::optional<long> s;
  std::optional<long> B;

  /// Throws std::invalid_argument on any admissibility violation.
  void validate() const;

  long den_r() const;   // denominator of r in lowest terms
  long s_over_J() const;

  /// The large-scale constraint s >= 10(2r+1) M B^2. Reported, not enforced.
  bool satisfies_scale_condition() const;

  /// Stable key for caches and evaluation logs, e.g. "M=7;d=0,1".
  std::string digest() const;
};

}  // namespace zetaforms
