#include "zetaforms/search.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace zetaforms {

namespace {

std::string digest_of(long M, const std::vector<long>& deltas) {
  ProofParameters p;
  p.M = M;
  p.J = static_cast<long>(deltas.size());
  p.deltas = deltas;
  return p.digest();
}

bool admissible(long M, const std::vector<long>& deltas) {
  if (M < 1 || deltas.empty()) return false;
  for (size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i] < 0) return false;
    if (i && deltas[i] < deltas[i - 1]) return false;
  }
  return 2 * deltas.back() < M;
}

// better strictly, with the deterministic tie-break (smaller M, then
// lexicographically smaller deltas)
bool improves(const EvalRecord& cand, const EvalRecord& best) {
  if (cand.C0 > best.C0) return true;
  if (cand.C0 < best.C0) return false;
  if (cand.M != best.M) return cand.M < best.M;
  return cand.deltas < best.deltas;
}

struct Evaluator {
  long prec;
  OmegaTableOptions opts;
  std::map<std::string, EvalRecord> cache;
  long misses = 0;

  const EvalRecord& eval(long M, const std::vector<long>& deltas) {
    std::string key = digest_of(M, deltas);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    CriterionReport rep = compute_constants(M, deltas, prec, opts);
    EvalRecord rec;
    rec.digest = key;
    rec.M = M;
    rec.deltas = deltas;
    rec.varpi = rep.varpi;
    rec.r0 = rep.r0;
    rec.C0 = rep.C0;
    ++misses;
    return cache.emplace(key, std::move(rec)).first->second;
  }
};

}  // namespace

SearchResult scan_M(long J, const std::vector<long>& deltas, long M_lo, long M_hi,
                    long prec, const OmegaTableOptions& opts) {
  if (static_cast<long>(deltas.size()) != J)
    throw std::invalid_argument("deltas must have exactly J entries");
  if (M_lo > M_hi) throw std::invalid_argument("empty M range");
  SearchResult res;
  Evaluator ev{prec, opts, {}, 0};
  bool have_best = false;
  EvalRecord best;
  for (long M = M_lo; M <= M_hi; ++M) {
    if (!admissible(M, deltas)) {
      std::ostringstream os;
      os << "M=" << M << " skipped: inadmissible with these deltas";
      res.notices.push_back(os.str());
      continue;
    }
    const EvalRecord& rec = ev.eval(M, deltas);
    res.evaluations.push_back(rec);
    if (!have_best || improves(rec, best)) {
      best = rec;
      have_best = true;
    }
  }
  if (!have_best) throw std::invalid_argument("no admissible M in the range");
  res.best_M = best.M;
  res.best_deltas = best.deltas;
  res.best_C0 = best.C0;
  res.budget_used = ev.misses;
  return res;
}

SearchResult local_search(const ProofParameters& seed, long budget, long prec,
                          const OmegaTableOptions& opts) {
  seed.validate();
  SearchResult res;
  Evaluator ev{prec, opts, {}, 0};

  EvalRecord best = ev.eval(seed.M, seed.deltas);
  res.evaluations.push_back(best);
  long used = 0;

  bool moved = true;
  while (moved && used < budget) {
    moved = false;
    // deterministic neighborhood order: M-1, M+1, then per-j delta moves
    std::vector<std::pair<long, std::vector<long>>> moves;
    moves.push_back({best.M - 1, best.deltas});
    moves.push_back({best.M + 1, best.deltas});
    for (size_t j = 0; j < best.deltas.size(); ++j) {
      for (long step : {-1L, +1L}) {
        auto d = best.deltas;
        d[j] += step;
        moves.push_back({best.M, d});
      }
    }
    EvalRecord round_best = best;
    bool round_improved = false;
    for (const auto& [M, d] : moves) {
      if (used >= budget) break;
      if (!admissible(M, d)) continue;
      std::string key = digest_of(M, d);
      bool fresh = ev.cache.find(key) == ev.cache.end();
      const EvalRecord& rec = ev.eval(M, d);
      if (fresh) {
        res.evaluations.push_back(rec);
        ++used;
      }
      if (improves(rec, round_best)) {
        round_best = rec;
        round_improved = true;
      }
    }
    if (round_improved) {
      best = round_best;
      moved = true;
    }
  }
  res.best_M = best.M;
  res.best_deltas = best.deltas;
  res.best_C0 = best.C0;
  res.budget_used = used;
  return res;
}

}  // namespace zetaforms
