#pragma once

#include <string>
#include <vector>

#include "zetaforms/criterion.hpp"

namespace zetaforms {

struct EvalRecord {
  std::string digest;
  long M = 0;
  std::vector<long> deltas;
  Real varpi, r0, C0;
};

struct SearchResult {
  long best_M = 0;
  std::vector<long> best_deltas;
  Real best_C0;
  std::vector<EvalRecord> evaluations;  // in evaluation order
  long budget_used = 0;
  std::vector<std::string> notices;     // skipped candidates etc.
};

/// Evaluates (varpi, r0, C0) for every admissible M in [M_lo, M_hi] with the
/// deltas fixed; returns the argmax of C0 (ties: smaller M).
SearchResult scan_M(long J, const std::vector<long>& deltas, long M_lo, long M_hi,
                    long prec, const OmegaTableOptions& opts = {});

/// Deterministic hill climbing over the moves M +- 1 and delta_j +- 1
/// (admissibility preserved). The seed evaluation is free; every distinct
/// neighbor evaluation consumes one unit of budget.
SearchResult local_search(const ProofParameters& seed, long budget, long prec,
                          const OmegaTableOptions& opts = {});

}  // namespace zetaforms
