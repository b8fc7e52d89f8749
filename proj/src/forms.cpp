#include "zetaforms/forms.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>

#include "zetaforms/errors.hpp"
#include "zetaforms/hurwitz.hpp"
#include "zetaforms/omega.hpp"

namespace zetaforms {

namespace {

// 1/x as a canonical rational (x nonzero integer).
BigRational inv_of(const BigInt& x) {
  BigRational r;
  mpz_ptr num = mpq_numref(r.get_mpq_t());
  mpz_ptr den = mpq_denref(r.get_mpq_t());
  mpz_set_si(num, mpz_sgn(x.get_mpz_t()) >= 0 ? 1 : -1);
  mpz_abs(den, x.get_mpz_t());
  return r;
}

// psum[ell] += mult * b^ell * sum over the progression u0, u0+step, ...
// (count terms, u == 0 skipped) of u^-ell, for ell = 1..ell_max.
void add_inv_powers(std::vector<BigRational>& psum, long ell_max, long u0, long step,
                    long count, long b, long mult) {
  if (ell_max < 1 || count < 1) return;
  std::vector<BigRational> acc(ell_max + 1), blk(ell_max + 1);
  int fill = 0;
  BigInt upow;
  for (long v = 0; v < count; ++v) {
    long u = u0 + v * step;
    if (u == 0) continue;
    upow = u;
    for (long ell = 1; ell <= ell_max; ++ell) {
      blk[ell] += inv_of(upow);
      if (ell < ell_max) upow *= u;
    }
    if (++fill == 32) {
      for (long ell = 1; ell <= ell_max; ++ell) {
        acc[ell] += blk[ell];
        blk[ell] = 0;
      }
      fill = 0;
    }
  }
  for (long ell = 1; ell <= ell_max; ++ell) acc[ell] += blk[ell];
  BigRational bp(1);
  for (long ell = 1; ell <= ell_max; ++ell) {
    bp *= b;
    psum[ell] += acc[ell] * bp * mult;
  }
}

// prod of the progression u0, u0+step, ... (count terms, u == 0 skipped).
BigInt progression_product(long u0, long step, long count) {
  BigInt prod = 1;
  for (long v = 0; v < count; ++v) {
    long u = u0 + v * step;
    if (u != 0) mpz_mul_si(prod.get_mpz_t(), prod.get_mpz_t(), u);
  }
  return prod;
}

long first_as_long(const BigRational& q) {
  if (!q.get_num().fits_slong_p())
    throw std::overflow_error("factor shift does not fit a machine word");
  return q.get_num().get_si();
}

}  // namespace

std::vector<std::pair<BigRational, long>> FactoredForm::factors() const {
  std::map<BigRational, long> m;
  for (const Run& run : runs) {
    BigRational sh = run.first;
    for (long v = 0; v < run.count; ++v) {
      m[sh] += run.mult;
      if (v + 1 < run.count) sh += 1;
    }
  }
  std::vector<std::pair<BigRational, long>> out;
  out.reserve(m.size());
  for (const auto& [shift, mult] : m)
    if (mult != 0) out.emplace_back(shift, mult);
  return out;
}

long FactoredForm::total_linear_factors() const {
  long t = extra_linear ? 1 : 0;
  for (const Run& run : runs) t += run.count;
  return t;
}

BigRational FactoredForm::eval_exact(const BigRational& t) const {
  long order = 0;
  BigRational lin = 2 * t + BigRational(M) * BigRational(n);
  if (extra_linear && lin == 0) order += 1;
  for (const Run& run : runs) {
    BigRational pos = -t - run.first;
    if (pos.get_den() == 1 && pos >= 0 && pos < run.count) order += run.mult;
  }
  if (order < 0) throw std::domain_error("R_n evaluated at a pole");
  if (order > 0) return BigRational(0);

  BigRational acc = scalar * BigRational(power_scalar.to_integer());
  if (extra_linear) acc *= lin;
  for (const Run& run : runs) {
    BigRational prod(1);
    BigRational x = t + run.first;
    for (long v = 0; v < run.count; ++v) {
      prod *= x;
      if (v + 1 < run.count) x += 1;
    }
    acc *= rational_pow(prod, run.mult);
  }
  return acc;
}

long FactoredForm::pole_order(long k) const {
  long m = 0;
  for (const Run& run : runs) {
    if (run.first.get_den() != 1) continue;
    long lo = first_as_long(run.first);
    if (k >= lo && k < lo + run.count) m += run.mult;
  }
  if (extra_linear && 2 * k == M * n) m += 1;
  return m < 0 ? -m : 0;
}

FactoredForm build_rational_function(long n, const ProofParameters& p, const SieveSets& sv) {
  p.validate();
  if (!p.s) throw std::invalid_argument("building R_n requires s");
  if (n < 1 || !sv.divides_period(n))
    throw PreconditionError("n must be a positive multiple of the period " +
                            sv.period.get_str());

  const long s = *p.s;
  const long sJ = s / p.J;
  const long den = p.den_r();
  const long zc = sv.z_count();

  BigRational rMn_q = p.r * p.M * n;
  if (rMn_q.get_den() != 1)
    throw std::logic_error("r*M*n is not an integer despite the period check");
  const long rMn = rMn_q.get_num().get_si();
  const long tMn = 2 * rMn + p.M * n;  // (2r+1) M n

  FactoredForm f;
  f.n = n;
  f.s = s;
  f.M = p.M;
  f.deltas = p.deltas;
  f.r = p.r;
  f.B = sv.B;
  f.thetas = sv.z;
  f.rMn = rMn;
  f.k_min = p.deltas.front() * n;
  f.k_max = (p.M - p.deltas.front()) * n;

  // scalar: prod_j ((M-2d_j) n)!^{s/J} over (n/den)!^{den (2r+1) M |Z| - den M}
  BigInt num = 1;
  for (long d : p.deltas) {
    BigInt fac, facp;
    mpz_fac_ui(fac.get_mpz_t(), static_cast<unsigned long>((p.M - 2 * d) * n));
    mpz_pow_ui(facp.get_mpz_t(), fac.get_mpz_t(), static_cast<unsigned long>(sJ));
    num *= facp;
  }
  // (2r+1) den(r) = 2 num(r) + den(r), an integer
  if (!p.r.get_num().fits_slong_p())
    throw std::invalid_argument("numerator of r does not fit a machine word");
  const long tr1den = 2 * p.r.get_num().get_si() + den;
  const long dexp = tr1den * p.M * zc - den * p.M;
  BigInt dfac, denom;
  mpz_fac_ui(dfac.get_mpz_t(), static_cast<unsigned long>(n / den));
  mpz_pow_ui(denom.get_mpz_t(), dfac.get_mpz_t(), static_cast<unsigned long>(dexp));
  f.scalar = make_rational(num, denom);

  f.power_scalar = (sv.a1 * sv.a2).pow(n);
  if (!f.power_scalar.is_integral())
    throw std::logic_error("A1^n A2^n is not integral despite the period check");

  f.runs.push_back({BigRational(-rMn), rMn, +1});
  f.runs.push_back({BigRational(p.M * n + 1), rMn, +1});
  for (const BigRational& theta : sv.z)
    if (theta != 1) f.runs.push_back({theta - rMn, tMn, +1});
  for (long d : p.deltas) f.runs.push_back({BigRational(d * n), (p.M - 2 * d) * n + 1, -sJ});
  f.extra_linear = true;

  long deg = 1;
  for (const auto& run : f.runs) deg += run.count * run.mult;
  f.degree = deg;
  if (deg > -2)
    throw PreconditionError("degree of R_n exceeds -2 at this scale (got " +
                            std::to_string(deg) + ")");
  return f;
}

const BigRational& PartialFractionTable::at(long i, long k) const {
  if (i < 1 || i > s || k < k_min || k > k_max)
    throw std::out_of_range("partial-fraction index out of range");
  return coef[k - k_min][i - 1];
}

BigRational PartialFractionTable::reconstruct_at(const BigRational& t) const {
  BigRational total(0);
  for (long k = k_min; k <= k_max; ++k) {
    if (t + k == 0) throw std::domain_error("reconstruction at a pole");
    BigRational w = BigRational(1) / (t + k);
    BigRational acc(0);
    for (long i = s; i >= 1; --i) {
      acc += at(i, k);
      acc *= w;
    }
    total += acc;
  }
  return total;
}

BigRational PartialFractionTable::residue_sum() const {
  BigRational sum(0);
  for (long k = k_min; k <= k_max; ++k) sum += at(1, k);
  return sum;
}

double PartialFractionTable::max_log2_abs() const {
  double mx = 0.0;
  for (const auto& col : coef)
    for (const auto& a : col)
      if (a != 0) mx = std::max(mx, rational_log2_abs(a));
  return mx;
}

PartialFractionTable partial_fractions(const FactoredForm& f, bool parallel) {
  PartialFractionTable T;
  T.n = f.n;
  T.s = f.s;
  T.k_min = f.k_min;
  T.k_max = f.k_max;
  const long K = T.k_max - T.k_min + 1;
  const long s = f.s;
  T.coef.assign(K, {});

  const BigRational pref =
      f.scalar * BigRational(f.power_scalar.to_integer()) * (f.extra_linear ? 2 : 1);
  const long lin_shift2 = f.M * f.n;  // the linear factor is 2 (t + lin_shift2/2)

  std::atomic<bool> bad{false};
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long idx = 0; idx < K; ++idx) {
    if (bad.load(std::memory_order_relaxed)) continue;
    const long k = T.k_min + idx;
    std::vector<BigRational> col(s, BigRational(0));
    const long q = f.pole_order(k);
    if (q > s) {
      bad.store(true);
      continue;
    }
    if (q > 0) {
      // Around t = -k + w:  R(t) (t+k)^s = C w^{s-q} (1 + sum b_m w^m), so
      // a[i][k] = C * b_{q-i}. C and the power sums come from every linear
      // factor other than (t+k) itself.
      BigInt Cnum = 1, Cden = 1;
      std::vector<BigRational> psum(q, BigRational(0));  // index ell in [1, q-1]
      for (const auto& run : f.runs) {
        const long b = static_cast<long>(run.first.get_den().get_si());
        long u0;
        if (b == 1) {
          u0 = first_as_long(run.first) - k;
        } else {
          u0 = run.first.get_num().get_si() - k * b;
        }
        BigInt prod = progression_product(u0, b, run.count);
        if (run.mult > 0) {
          BigInt pw;
          mpz_pow_ui(pw.get_mpz_t(), prod.get_mpz_t(), static_cast<unsigned long>(run.mult));
          Cnum *= pw;
          if (b > 1) {
            BigInt bp;
            mpz_ui_pow_ui(bp.get_mpz_t(), static_cast<unsigned long>(b),
                          static_cast<unsigned long>(run.count * run.mult));
            Cden *= bp;
          }
        } else {
          BigInt pw;
          mpz_pow_ui(pw.get_mpz_t(), prod.get_mpz_t(), static_cast<unsigned long>(-run.mult));
          Cden *= pw;
          if (b > 1) {
            BigInt bp;
            mpz_ui_pow_ui(bp.get_mpz_t(), static_cast<unsigned long>(b),
                          static_cast<unsigned long>(run.count * -run.mult));
            Cnum *= bp;
          }
        }
        add_inv_powers(psum, q - 1, u0, b, run.count, b, run.mult);
      }
      if (f.extra_linear && lin_shift2 != 2 * k) {
        // contributes the single factor (t + Mn/2); Mn is even here
        long u = lin_shift2 / 2 - k;
        mpz_mul_si(Cnum.get_mpz_t(), Cnum.get_mpz_t(), u);
        add_inv_powers(psum, q - 1, u, 1, 1, 1, 1);
      }
      BigRational C = pref * make_rational(Cnum, Cden);

      std::vector<BigRational> bcoef(q, BigRational(0));
      bcoef[0] = 1;
      for (long m = 1; m < q; ++m) {
        BigRational acc(0);
        for (long ell = 1; ell <= m; ++ell) {
          if (ell % 2 == 1)
            acc += psum[ell] * bcoef[m - ell];
          else
            acc -= psum[ell] * bcoef[m - ell];
        }
        bcoef[m] = acc / m;
      }
      for (long i = 1; i <= q; ++i) col[i - 1] = C * bcoef[q - i];
    }
    T.coef[idx] = std::move(col);
  }
  if (bad.load()) throw CheckFailure("pole order exceeds s: malformed factored form");
  return T;
}

LinearForm linear_form_coeffs(const PartialFractionTable& T,
                              const std::vector<BigRational>& thetas) {
  LinearForm lf;
  lf.n = T.n;
  lf.s = T.s;
  for (long i = 3; i <= T.s - 1; i += 2) {
    BigRational sum(0);
    for (long k = T.k_min; k <= T.k_max; ++k) sum += T.at(i, k);
    lf.rho_odd[i] = sum;
  }

  // rho_{0,theta} = -sum_k sum_{l<k} sum_i a[i][k]/(l+theta)^i; reorganized as
  // a single pass over l against suffix sums of the table columns.
  const long Lmax = T.k_max;  // l ranges over [0, k_max - 1]
  std::vector<std::vector<BigRational>> suffix(T.s + 1, std::vector<BigRational>(Lmax, BigRational(0)));
  for (long i = 1; i <= T.s; ++i) {
    BigRational run(0);
    for (long l = Lmax - 1; l >= 0; --l) {
      long k = l + 1;  // smallest k with k > l
      if (k >= T.k_min && k <= T.k_max) run += T.at(i, k);
      suffix[i][l] = run;
    }
  }

  for (const BigRational& theta : thetas) {
    if (theta <= 0 || theta > 1) throw std::domain_error("theta must lie in (0, 1]");
    BigRational acc(0);
    for (long l = 0; l < Lmax; ++l) {
      BigRational w = BigRational(1) / (theta + l);
      BigRational horner(0);
      for (long i = T.s; i >= 1; --i) {
        horner += suffix[i][l];
        horner *= w;
      }
      acc += horner;
    }
    lf.rho0.emplace_back(theta, -acc);
  }
  return lf;
}

const BigRational& LinearForm::rho0_at(const BigRational& theta) const {
  for (const auto& [th, v] : rho0)
    if (th == theta) return v;
  throw std::out_of_range("no rho_0 entry for this theta");
}

std::vector<BigRational> taylor_at(const BigRational& scalar,
                                   const std::vector<std::pair<BigRational, long>>& factors,
                                   const BigRational& t0, long L) {
  long zmult = 0;
  BigRational C = scalar;
  std::vector<BigRational> psum(L + 2, BigRational(0));
  for (const auto& [shift, mult] : factors) {
    BigRational d = shift + t0;
    if (d == 0) {
      if (mult < 0) throw std::domain_error("pole at the expansion point");
      zmult += mult;
      continue;
    }
    C *= rational_pow(d, mult);
    BigRational invd = BigRational(1) / d;
    BigRational ipow = invd;
    for (long ell = 1; ell <= L; ++ell) {
      psum[ell] += ipow * mult;
      ipow *= invd;
    }
  }
  std::vector<BigRational> out(L + 1, BigRational(0));
  if (zmult > L) return out;
  const long ord = L - zmult;
  std::vector<BigRational> b(ord + 1, BigRational(0));
  b[0] = 1;
  for (long m = 1; m <= ord; ++m) {
    BigRational acc(0);
    for (long ell = 1; ell <= m; ++ell) {
      if (ell % 2 == 1)
        acc += psum[ell] * b[m - ell];
      else
        acc -= psum[ell] * b[m - ell];
    }
    b[m] = acc / m;
  }
  for (long j = 0; j <= ord; ++j) out[zmult + j] = C * b[j];
  return out;
}

namespace {

// Magnitude model and rigorous cutoff bound for the series over R(m + theta).
struct SeriesShape {
  double log2_const;  // log2 |scalar * PW|
  double maxc;        // largest |shift| among linear factors
  double peak_log2;   // estimate of log2 max(1, |S|)
  long m0;
};

double term_log2(const FactoredForm& f, double log2_const, double th, double m) {
  static const double LN2 = std::log(2.0);
  double x = m + th;
  double acc = log2_const + std::log2(std::fabs(2 * x + double(f.M) * double(f.n)));
  for (const auto& run : f.runs) {
    double x0 = x + run.first.get_d();
    acc += run.mult * (std::lgamma(x0 + run.count) - std::lgamma(x0)) / LN2;
  }
  return acc;
}

SeriesShape series_shape(const FactoredForm& f, const BigRational& theta, long prec) {
  SeriesShape sh;
  sh.m0 = f.rMn;
  sh.log2_const = rational_log2_abs(f.scalar) + f.power_scalar.log_value_d() / std::log(2.0);
  sh.maxc = std::fabs(double(f.M) * double(f.n) / 2.0);
  for (const auto& run : f.runs) {
    double a = std::fabs(run.first.get_d());
    double b = std::fabs(run.first.get_d() + double(run.count - 1));
    sh.maxc = std::max(sh.maxc, std::max(a, b));
  }
  const double th = theta.get_d();
  double peak = -1e300;
  double m = static_cast<double>(sh.m0);
  for (int iter = 0; iter < 4096; ++iter) {
    double t = term_log2(f, sh.log2_const, th, m);
    peak = std::max(peak, t);
    if (t < peak - (prec + 96)) break;
    m = std::max(m + 1.0, m * 1.05);
    if (m > 1e18) break;
  }
  sh.peak_log2 = std::max(0.0, peak + 32.0);  // sum magnitude, clamped at 1
  return sh;
}

// log2 of a rigorous bound on sum_{m > T} |R(m + theta)|, valid for T >= 2 maxc.
double tail_log2_bound(const FactoredForm& f, const SeriesShape& sh, double T) {
  double corr = std::log2(1.0 + double(f.M) * double(f.n) / (2.0 * T));
  for (const auto& run : f.runs) {
    double cstar = std::max(std::fabs(run.first.get_d()),
                            std::fabs(run.first.get_d() + double(run.count - 1)));
    corr += run.mult * run.count * std::log2(1.0 + (run.mult > 0 ? cstar : -cstar) / T);
  }
  double deg = static_cast<double>(f.degree);
  double sumlog = std::max((deg + 1) * std::log2(T) - std::log2(-deg - 1),
                           deg * std::log2(T)) + 1.0;
  return sh.log2_const + 1.0 + corr + sumlog + 8.0;
}

// One series term as a Real, from precomputed factor bases at wp.
struct TermEvaluator {
  const FactoredForm* f;
  long wp;
  std::vector<Real> bases;  // theta + run.first per run
  Real lin_base;            // 2 theta + M n

  TermEvaluator(const FactoredForm& form, const BigRational& theta, long wprec)
      : f(&form), wp(wprec) {
    bases.reserve(form.runs.size());
    for (const auto& run : form.runs) bases.push_back(Real::of(theta + run.first, wp));
    lin_base = Real::of(2 * theta + BigRational(form.M) * BigRational(form.n), wp);
  }

  Real eval(long m) const {
    Real acc = Real::of(1L, wp);
    for (size_t ri = 0; ri < f->runs.size(); ++ri) {
      const auto& run = f->runs[ri];
      Real prod = Real::of(1L, wp);
      Real x = bases[ri] + m;
      for (long v = 0; v < run.count; ++v) {
        prod *= x;
        if (v + 1 < run.count) x += 1;
      }
      acc *= pow_si(prod, run.mult);
    }
    acc *= lin_base + 2 * m;
    return acc;
  }
};

}  // namespace

Real evaluate_series(const FactoredForm& f, const BigRational& theta, long prec,
                     const PartialFractionTable* table_in) {
  if (theta <= 0) throw std::domain_error("theta must be positive");
  if (f.degree > -2) throw std::domain_error("series requires degree <= -2");

  const SeriesShape sh = series_shape(f, theta, prec);
  const double target_log2 = -(prec + 16.0) + sh.peak_log2;

  // Smallest cutoff T (factor-magnitude bound) that brings the tail below target.
  double T = std::max(2.0 * sh.maxc + 2.0, double(sh.m0) + 1.0);
  bool direct_ok = false;
  for (int iter = 0; iter < 4096; ++iter) {
    if (tail_log2_bound(f, sh, T) <= target_log2 - 4.0) {
      direct_ok = true;
      break;
    }
    T *= 1.25;
    if (T > 9e17) break;
  }
  const double cost = direct_ok ? (T - sh.m0) * double(f.total_linear_factors()) : 1e30;

  const BigRational scalar_all =
      f.scalar * BigRational(f.power_scalar.to_integer());

  if (direct_ok && cost <= 6e7) {
    const long wp = prec + 48 + std::max(0L, static_cast<long>(sh.peak_log2) + 16);
    const long Tl = static_cast<long>(T) + 20;  // safety margin of extra terms
    TermEvaluator ev(f, theta, wp);
    const long CHUNK = 512;
    const long first = sh.m0, last = Tl;
    const long nchunks = (last - first) / CHUNK + 1;
    std::vector<Real> partial(nchunks);
#pragma omp parallel for schedule(dynamic)
    for (long c = 0; c < nchunks; ++c) {
      Real acc(wp);
      const long lo = first + c * CHUNK;
      const long hi = std::min(last, lo + CHUNK - 1);
      for (long m = lo; m <= hi; ++m) acc += ev.eval(m);
      partial[c] = acc;
    }
    Real S = Real::of(scalar_all, wp);
    Real total(wp);
    for (const Real& pc : partial) total += pc;
    return round_to(S * total, prec);
  }

  // Pole-expansion tail: short direct head, then
  //   sum_{m>T1} R(m+theta) = sum_k a[1][k] (psi(T1+1+theta) - psi(T1+1+theta+k))
  //                          + sum_{i>=2} sum_k a[i][k] zeta(i, T1+1+theta+k).
  PartialFractionTable local;
  const PartialFractionTable* tab = table_in;
  if (!tab) {
    local = partial_fractions(f);
    tab = &local;
  }
  if (tab->residue_sum() != 0)
    throw CheckFailure("nonzero residue sum; series tail fold is invalid");

  const double max_a = tab->max_log2_abs();
  const long wp =
      prec + 64 + std::max(0L, static_cast<long>(max_a - std::max(0.0, sh.peak_log2 - 32.0)) + 24);

  const long head_len = 128;
  const long T1 = sh.m0 + head_len - 1;
  TermEvaluator ev(f, theta, wp);
  Real head(wp);
  for (long m = sh.m0; m <= T1; ++m) head += ev.eval(m);
  head *= Real::of(scalar_all, wp);

  const long K = tab->k_max - tab->k_min + 1;
  std::vector<Real> contrib(K);
  const BigRational base_alpha = theta + (T1 + 1);
  const Real psi_base = digamma(base_alpha, wp);
#pragma omp parallel for schedule(dynamic)
  for (long idx = 0; idx < K; ++idx) {
    const long k = tab->k_min + idx;
    Real loc(wp);
    const BigRational& a1 = tab->at(1, k);
    if (a1 != 0) loc += Real::of(a1, wp) * (psi_base - digamma(base_alpha + k, wp));
    for (long i = 2; i <= tab->s; ++i) {
      const BigRational& a = tab->at(i, k);
      if (a != 0) loc += Real::of(a, wp) * hurwitz_zeta(i, base_alpha + k, wp);
    }
    contrib[idx] = loc;
  }
  Real tail(wp);
  for (const Real& c : contrib) tail += c;
  return round_to(head + tail, prec);
}

}  // namespace zetaforms
