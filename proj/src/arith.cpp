#include "zetaforms/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace zetaforms {

BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

BigRational make_rational(long num, long den) {
  return make_rational(BigInt(num), BigInt(den));
}

BigRational parse_rational(const std::string& s) {
  std::string t = s;
  t.erase(std::remove_if(t.begin(), t.end(), [](char c) { return c == ' ' || c == '\t'; }),
          t.end());
  if (t.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = t.find('/');
  try {
    if (slash == std::string::npos) {
      BigRational q(BigInt(t));
      return q;
    }
    BigInt num(t.substr(0, slash));
    BigInt den(t.substr(slash + 1));
    return make_rational(num, den);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
}

std::string rational_str(const BigRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

BigRational rational_pow(const BigRational& q, long e) {
  if (e == 0) return BigRational(1);
  BigRational r;
  mpz_ptr rnum = mpq_numref(r.get_mpq_t());
  mpz_ptr rden = mpq_denref(r.get_mpq_t());
  unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(rnum, mpq_numref(q.get_mpq_t()), a);
  mpz_pow_ui(rden, mpq_denref(q.get_mpq_t()), a);
  if (e < 0) {
    if (mpz_sgn(rnum) == 0) throw std::domain_error("zero raised to a negative power");
    mpz_swap(rnum, rden);
    if (mpz_sgn(rden) < 0) {
      mpz_neg(rnum, rnum);
      mpz_neg(rden, rden);
    }
  }
  return r;  // powers of a canonical rational stay canonical
}

std::vector<long> primes_upto(long n) {
  std::vector<long> out;
  if (n < 2) return out;
  std::vector<bool> comp(static_cast<size_t>(n) + 1, false);
  for (long i = 2; i * i <= n; ++i)
    if (!comp[i])
      for (long j = i * i; j <= n; j += i) comp[j] = true;
  for (long i = 2; i <= n; ++i)
    if (!comp[i]) out.push_back(i);
  return out;
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

long euler_phi(long b) {
  if (b < 1) throw std::invalid_argument("euler_phi requires b >= 1");
  long result = b;
  long m = b;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

BigInt lcm_upto(long m) {
  if (m < 1) throw std::invalid_argument("lcm_upto requires m >= 1");
  BigInt d = 1;
  for (long p : primes_upto(m)) {
    long pk = p;
    while (pk <= m / p) pk *= p;  // largest power of p not exceeding m
    d *= pk;
  }
  return d;
}

BigInt mu_factor(long m, long b) {
  if (m < 1 || b < 1) throw std::invalid_argument("mu_factor requires m, b >= 1");
  BigInt result;
  mpz_ui_pow_ui(result.get_mpz_t(), static_cast<unsigned long>(b),
                static_cast<unsigned long>(m));
  long rest = b;
  for (long p = 2; p * p <= rest; ++p) {
    if (rest % p == 0) {
      BigInt pe;
      mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(p),
                    static_cast<unsigned long>(m / (p - 1)));
      result *= pe;
      while (rest % p == 0) rest /= p;
    }
  }
  if (rest > 1) {
    BigInt pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(rest),
                  static_cast<unsigned long>(m / (rest - 1)));
    result *= pe;
  }
  return result;
}

long padic_valuation_nonzero(long p, const BigInt& x) {
  if (x == 0) throw std::invalid_argument("valuation of zero integer");
  BigInt rem;
  return static_cast<long>(
      mpz_remove(rem.get_mpz_t(), x.get_mpz_t(), BigInt(p).get_mpz_t()));
}

Valuation padic_valuation(long p, const BigRational& x) {
  if (!is_prime(p)) throw std::invalid_argument("padic_valuation requires a prime");
  if (x == 0) return Valuation::infinite();
  long vn = padic_valuation_nonzero(p, BigInt(x.get_num()));
  long vd = padic_valuation_nonzero(p, BigInt(x.get_den()));
  return Valuation::of(vn - vd);
}

void PrimePowerProduct::multiply_by(long prime, const BigRational& exponent) {
  if (!is_prime(prime)) throw std::invalid_argument("PrimePowerProduct key must be prime");
  if (exponent == 0) return;
  auto it = exp_.find(prime);
  if (it == exp_.end()) {
    exp_.emplace(prime, exponent);
  } else {
    it->second += exponent;
    if (it->second == 0) exp_.erase(it);
  }
}

BigRational PrimePowerProduct::exponent_of(long prime) const {
  auto it = exp_.find(prime);
  return it == exp_.end() ? BigRational(0) : it->second;
}

PrimePowerProduct PrimePowerProduct::operator*(const PrimePowerProduct& o) const {
  PrimePowerProduct r = *this;
  for (const auto& [p, e] : o.exp_) r.multiply_by(p, e);
  return r;
}

PrimePowerProduct PrimePowerProduct::pow(long n) const {
  PrimePowerProduct r;
  if (n == 0) return r;
  for (const auto& [p, e] : exp_) r.exp_.emplace(p, e * n);
  return r;
}

bool PrimePowerProduct::is_integral() const {
  for (const auto& [p, e] : exp_) {
    (void)p;
    if (e.get_den() != 1 || e < 0) return false;
  }
  return true;
}

BigInt PrimePowerProduct::to_integer() const {
  if (!is_integral()) throw std::domain_error("prime-power product is not an integer");
  BigInt r = 1;
  for (const auto& [p, e] : exp_) {
    if (!e.get_num().fits_ulong_p())
      throw std::domain_error("prime-power exponent too large to materialize");
    BigInt pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(p), e.get_num().get_ui());
    r *= pe;
  }
  return r;
}

Real PrimePowerProduct::log_value(long prec) const {
  Real sum(prec);
  for (const auto& [p, e] : exp_) sum += Real::of(e, prec) * log(Real::of(p, prec));
  return sum;
}

double PrimePowerProduct::log_value_d() const {
  double sum = 0.0;
  for (const auto& [p, e] : exp_) sum += e.get_d() * std::log(static_cast<double>(p));
  return sum;
}

namespace {
std::mutex bern_mutex;
// Even-index Bernoulli numbers; cache[j] = B_{2j}.
std::vector<BigRational> bern_cache;

void extend_bernoulli(long jmax) {
  // Recurrence sum_{k=0}^{m} binom(m+1, k) B_k = 0 over all indices, with
  // B_1 = -1/2; odd B beyond 1 vanish.
  static std::vector<BigRational> all;  // all[m] = B_m, guarded by bern_mutex
  if (all.empty()) {
    all.push_back(BigRational(1));
    all.push_back(make_rational(-1, 2));
  }
  while (static_cast<long>(all.size()) <= 2 * jmax) {
    long m = static_cast<long>(all.size());
    BigRational acc(0);
    BigInt binom;
    for (long k = 0; k < m; ++k) {
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(m + 1),
                   static_cast<unsigned long>(k));
      acc += BigRational(binom) * all[k];
    }
    all.push_back(-acc / BigRational(m + 1));
  }
  bern_cache.resize(jmax + 1);
  for (long j = 0; j <= jmax; ++j) bern_cache[j] = all[2 * j];
}
}  // namespace

BigRational bernoulli_2j(long j) {
  if (j < 0) throw std::invalid_argument("bernoulli_2j requires j >= 0");
  std::lock_guard<std::mutex> lock(bern_mutex);
  if (j >= static_cast<long>(bern_cache.size())) extend_bernoulli(j + 16);
  return bern_cache[j];
}

BigInt rational_floor(const BigRational& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

BigRational rational_frac(const BigRational& x) {
  return x - BigRational(rational_floor(x));
}

double rational_log2_abs(const BigRational& q) {
  if (q == 0) return 0.0;
  long en, ed;
  double mn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
  double md = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
  return std::log2(std::fabs(mn / md)) + static_cast<double>(en - ed);
}

BigRational rational_approx(const Real& x, long max_den) {
  if (max_den < 1) throw std::invalid_argument("max_den must be positive");
  // Continued-fraction expansion carried out in mpfr.
  Real t(x);
  BigInt p0 = 1, q0 = 0;  // previous convergent
  BigInt a;
  mpfr_get_z(a.get_mpz_t(), t.raw(), MPFR_RNDD);
  BigInt p1 = a, q1 = 1;
  for (int iter = 0; iter < 64; ++iter) {
    Real frac = t - Real::of(a, t.prec());
    if (frac.is_zero()) break;
    t = 1 / frac;
    mpfr_get_z(a.get_mpz_t(), t.raw(), MPFR_RNDD);
    BigInt p2 = a * p1 + p0;
    BigInt q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
  }
  return make_rational(p1, q1);
}

long isqrt_long(long n) {
  if (n < 0) throw std::invalid_argument("isqrt of negative");
  long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace zetaforms
