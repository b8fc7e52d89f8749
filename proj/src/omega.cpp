#include "zetaforms/omega.hpp"

#include <omp.h>

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace zetaforms {

namespace {

void check_shape(long M, const std::vector<long>& deltas) {
  if (M < 1 || deltas.empty()) throw std::invalid_argument("need M >= 1 and at least one delta");
  for (size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i] < 0 || (i && deltas[i] < deltas[i - 1]))
      throw std::invalid_argument("deltas must be non-negative and non-decreasing");
  }
  if (2 * deltas.back() >= M) throw std::invalid_argument("need 2*delta_J < M");
}

long mulmod(long coeff, long a, long q) {
  return static_cast<long>(static_cast<__int128>(coeff) * a % q);
}

}  // namespace

int omega_at(long num, long den, long M, const std::vector<long>& deltas) {
  check_shape(M, deltas);
  if (den <= 0) throw std::invalid_argument("denominator must be positive");
  long a = num % den;
  if (a < 0) a += den;
  if (a == 0) return 0;  // integer x: y = 0 makes every floor term vanish
  const long q = den;
  const int J = static_cast<int>(deltas.size());

  // The j-th summand, as a function of y, equals 1 exactly on the open
  // circular arc (b_j + c_j, b_j + 1) where b_j = frac(delta_j x) and
  // c_j = frac((M - 2 delta_j) x); in units of 1/q all endpoints are integers.
  std::vector<long> start(J), len(J), events;
  events.reserve(2 * J);
  for (int j = 0; j < J; ++j) {
    long bj = mulmod(deltas[j], a, q);
    long cj = mulmod(M - 2 * deltas[j], a, q);
    long sj = bj + cj;
    if (sj >= q) sj -= q;
    start[j] = sj;
    len[j] = q - cj;
    events.push_back(bj);
    events.push_back(sj);
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());

  int best = J;
  for (long e : events) {
    int at = 0, after = 0;
    for (int j = 0; j < J; ++j) {
      long d = e - start[j];
      if (d < 0) d += q;
      if (d < len[j]) {
        ++after;
        if (d > 0) ++at;
      }
    }
    best = std::min(best, std::min(at, after));
    if (best == 0) return 0;
  }
  return best;
}

namespace {

long objective_ref(const BigRational& y, const BigRational& x, long M,
                   const std::vector<long>& deltas) {
  BigInt total = 0;
  for (long d : deltas) {
    total += rational_floor(BigRational(M - 2 * d) * x);
    total -= rational_floor(y - BigRational(d) * x);
    total -= rational_floor(BigRational(M - d) * x - y);
  }
  return total.get_si();
}

}  // namespace

int omega_at_ref(const BigRational& x, long M, const std::vector<long>& deltas) {
  check_shape(M, deltas);
  if (x <= 0) throw std::domain_error("omega is defined for x > 0");

  std::vector<BigRational> cands;
  cands.push_back(BigRational(0));
  for (long d : deltas) {
    cands.push_back(rational_frac(BigRational(d) * x));
    cands.push_back(rational_frac(BigRational(M - d) * x));
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

  long best = objective_ref(cands[0], x, M, deltas);
  const BigRational one(1);
  for (size_t i = 0; i < cands.size(); ++i) {
    if (i) best = std::min(best, objective_ref(cands[i], x, M, deltas));
    const BigRational& next = (i + 1 < cands.size()) ? cands[i + 1] : one;
    BigRational mid = (cands[i] + next) / 2;
    best = std::min(best, objective_ref(mid, x, M, deltas));
  }
  return static_cast<int>(best);
}

int omega_at(const BigRational& x, long M, const std::vector<long>& deltas) {
  if (x <= 0) throw std::domain_error("omega is defined for x > 0");
  if (x.get_den().fits_slong_p() && x.get_num().fits_slong_p())
    return omega_at(x.get_num().get_si(), x.get_den().get_si(), M, deltas);
  return omega_at_ref(x, M, deltas);
}

int omega_at(const BigRational& x, const ProofParameters& p) {
  return omega_at(x, p.M, p.deltas);
}

int StepFunction::value_at(const BigRational& x) const {
  if (x < 0 || x > 1) throw std::domain_error("step function domain is [0,1]");
  auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), x);
  size_t idx = static_cast<size_t>(it - breakpoints.begin());
  if (it != breakpoints.end() && *it == x) return point_values[idx];
  return values[idx - 1];
}

int StepFunction::max_value() const {
  int m = 0;
  for (int v : values) m = std::max(m, v);
  for (int v : point_values) m = std::max(m, v);
  return m;
}

StepFunction omega_table(long M, const std::vector<long>& deltas,
                         const OmegaTableOptions& opts) {
  check_shape(M, deltas);
  const long Q = 2 * M;

  // Ascending Farey sequence of order 2M via the neighbor recurrence.
  std::vector<std::pair<long, long>> pts;
  pts.push_back({0, 1});
  {
    long a = 0, b = 1, c = 1, d = Q;
    while (true) {
      pts.push_back({c, d});
      if (c == 1 && d == 1) break;
      long k = (Q + b) / d;
      long e = k * c - a, f = k * d - b;
      a = c;
      b = d;
      c = e;
      d = f;
    }
  }

  const long F = static_cast<long>(pts.size());
  std::vector<int> vals(F - 1), pvals(F);
#pragma omp parallel for schedule(static) if (opts.parallel)
  for (long i = 0; i < F - 1; ++i) {
    long num = pts[i].first * pts[i + 1].second + pts[i + 1].first * pts[i].second;
    long den = 2 * pts[i].second * pts[i + 1].second;
    vals[i] = omega_at(num, den, M, deltas);
  }
#pragma omp parallel for schedule(static) if (opts.parallel)
  for (long i = 0; i < F; ++i) {
    pvals[i] = (pts[i].first == 0) ? 0 : omega_at(pts[i].first, pts[i].second, M, deltas);
  }

  // Merge: drop an interior breakpoint only when the value is the same on both
  // sides and at the point itself.
  std::vector<long> keep;
  keep.push_back(0);
  for (long i = 1; i <= F - 2; ++i)
    if (!(vals[i - 1] == vals[i] && pvals[i] == vals[i])) keep.push_back(i);
  keep.push_back(F - 1);

  StepFunction sf;
  sf.breakpoints.reserve(keep.size());
  sf.point_values.reserve(keep.size());
  sf.values.reserve(keep.size() - 1);
  for (long idx : keep) {
    sf.breakpoints.push_back(make_rational(pts[idx].first, pts[idx].second));
    sf.point_values.push_back(pvals[idx]);
  }
  for (size_t t = 0; t + 1 < keep.size(); ++t) sf.values.push_back(vals[keep[t]]);

  // Randomized agreement pass against the reference evaluation. Any mismatch
  // means the breakpoint superset {k/d : d <= 2M} missed a jump.
  if (opts.validation_samples > 0) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<long> den_dist(2, opts.validation_max_den);
    std::vector<std::pair<long, long>> samples(opts.validation_samples);
    for (auto& smp : samples) {
      long den = den_dist(rng);
      std::uniform_int_distribution<long> num_dist(1, den);
      smp = {num_dist(rng), den};
    }
    std::vector<int> got(samples.size()), want(samples.size());
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
    for (long i = 0; i < static_cast<long>(samples.size()); ++i) {
      BigRational x = make_rational(samples[i].first, samples[i].second);
      want[i] = omega_at_ref(x, M, deltas);
      got[i] = sf.value_at(x);
    }
    for (size_t i = 0; i < samples.size(); ++i) {
      if (got[i] != want[i]) {
        std::ostringstream os;
        os << "omega table validation failed at x = " << samples[i].first << "/"
           << samples[i].second << ": table " << got[i] << ", direct " << want[i];
        throw std::runtime_error(os.str());
      }
    }
  }
  return sf;
}

StepFunction omega_table(const ProofParameters& p, const OmegaTableOptions& opts) {
  p.validate();
  return omega_table(p.M, p.deltas, opts);
}

PrimePowerProduct phi_product(long n, long M, const std::vector<long>& deltas,
                              bool parallel) {
  check_shape(M, deltas);
  if (n < 1) throw std::invalid_argument("n must be positive");
  const long hi = (M - 2 * deltas[0]) * n;
  const long mn = M * n;
  auto ps = primes_upto(hi);
  std::vector<int> expnt(ps.size(), 0);
#pragma omp parallel for schedule(static) if (parallel)
  for (long i = 0; i < static_cast<long>(ps.size()); ++i) {
    long p = ps[i];
    if (p * p > mn) expnt[i] = omega_at(n % p, p, M, deltas);
  }
  PrimePowerProduct out;
  for (size_t i = 0; i < ps.size(); ++i)
    if (expnt[i] > 0) out.multiply_by(ps[i], BigRational(expnt[i]));
  return out;
}

PrimePowerProduct phi_product(long n, const ProofParameters& p, bool parallel) {
  return phi_product(n, p.M, p.deltas, parallel);
}

double log_phi_product(long n, long M, const std::vector<long>& deltas, bool parallel) {
  check_shape(M, deltas);
  const long hi = (M - 2 * deltas[0]) * n;
  const long mn = M * n;
  auto ps = primes_upto(hi);
  std::vector<int> expnt(ps.size(), 0);
#pragma omp parallel for schedule(static) if (parallel)
  for (long i = 0; i < static_cast<long>(ps.size()); ++i) {
    long p = ps[i];
    if (p * p > mn) expnt[i] = omega_at(n % p, p, M, deltas);
  }
  double sum = 0.0;  // summed in prime order so the result is thread-count independent
  for (size_t i = 0; i < ps.size(); ++i)
    if (expnt[i] > 0) sum += expnt[i] * std::log(static_cast<double>(ps[i]));
  return sum;
}

Real round_to(const Real& x, long prec) {
  Real out(prec);
  mpfr_set(out.raw(), x.raw(), MPFR_RNDN);
  return out;
}

Real digamma(const BigRational& x, long prec) {
  if (x <= 0) throw std::domain_error("digamma requires x > 0");
  const long wp = prec + 32;
  const long shift_target = static_cast<long>(0.13 * wp) + 8;

  Real X = Real::of(x, wp);
  Real acc(wp);
  BigInt fl = rational_floor(x);
  if (fl < shift_target) {
    long N = shift_target - fl.get_si();
    for (long k = 0; k < N; ++k) {
      acc -= 1 / X;
      X += 1;
    }
  }

  // Stirling series; for real X > 0 the remainder is bounded by the first
  // omitted term, so stopping below target is rigorous.
  Real res = log(X) - 1 / (2 * X);
  Real X2 = X * X;
  Real invpow = 1 / X2;
  const Real target = pow2(-(prec + 16));
  for (long j = 1;; ++j) {
    Real term = Real::of(bernoulli_2j(j), wp) / (2 * j) * invpow;
    res -= term;
    if (abs(term) < target) break;
    invpow /= X2;
    if (j > 4096) throw std::runtime_error("digamma series did not converge");
  }
  return round_to(acc + res, wp);
}

Real varpi_from_table(const StepFunction& t, long M, const std::vector<long>& deltas,
                      long prec, bool parallel) {
  check_shape(M, deltas);
  if (t.values.empty() || t.breakpoints.size() != t.values.size() + 1)
    throw std::invalid_argument("malformed step table");
  if (t.values.front() != 0)
    throw std::domain_error("omega must vanish on the interval adjacent to 0");
  if (t.max_value() == 0) return Real(prec);  // exactly zero

  const long wp = prec + 32;
  const long n = static_cast<long>(t.breakpoints.size());
  std::vector<char> needed(n, 0);
  for (long i = 0; i < static_cast<long>(t.values.size()); ++i) {
    if (t.values[i] != 0) {
      needed[i] = 1;
      needed[i + 1] = 1;
    }
  }
  std::vector<Real> psi(n);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long i = 1; i < n; ++i)
    if (needed[i]) psi[i] = digamma(t.breakpoints[i], wp);

  Real dpsi(wp);
  for (size_t i = 0; i < t.values.size(); ++i) {
    if (t.values[i] == 0) continue;
    dpsi += (psi[i + 1] - psi[i]) * static_cast<long>(t.values[i]);
  }

  Real dinv(wp);
  const BigRational bound = make_rational(1, M - 2 * deltas[0]);
  for (size_t i = 0; i < t.values.size(); ++i) {
    const BigRational& a = t.breakpoints[i];
    if (a >= bound) break;
    if (t.values[i] == 0) continue;
    const BigRational& b = t.breakpoints[i + 1];
    const BigRational upper = (b <= bound) ? b : bound;
    // omega constant on (a, upper): the piece integrates to omega*(1/a - 1/upper)
    Real piece = Real::of(BigRational(1) / a, wp) - Real::of(BigRational(1) / upper, wp);
    dinv += piece * static_cast<long>(t.values[i]);
  }
  return round_to(dpsi - dinv, prec);
}

Real varpi(long M, const std::vector<long>& deltas, long prec,
           const OmegaTableOptions& opts) {
  StepFunction t = omega_table(M, deltas, opts);
  return varpi_from_table(t, M, deltas, prec, opts.parallel);
}

Real varpi(const ProofParameters& p, long prec, const OmegaTableOptions& opts) {
  p.validate();
  return varpi(p.M, p.deltas, prec, opts);
}

}  // namespace zetaforms
