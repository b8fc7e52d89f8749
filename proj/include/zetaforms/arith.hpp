#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetaforms/real.hpp"

namespace zetaforms {

using BigInt = mpz_class;
// Always kept canonical: gcd(num, den) = 1, den > 0. All constructors below
// canonicalize; GMP arithmetic preserves the invariant.
using BigRational = mpq_class;

BigRational make_rational(const BigInt& num, const BigInt& den);
BigRational make_rational(long num, long den);

/// Parses "p", "p/q" or a plain integer string (whitespace-trimmed).
BigRational parse_rational(const std::string& s);
std::string rational_str(const BigRational& q);

/// q^e for signed e (e < 0 inverts; q must be nonzero then).
BigRational rational_pow(const BigRational& q, long e);

std::vector<long> primes_upto(long n);
bool is_prime(long p);

long euler_phi(long b);

/// D_m = lcm{1, ..., m}.
BigInt lcm_upto(long m);

/// mu_m(b) = b^m * prod_{p | b} p^{floor(m / (p-1))}.
BigInt mu_factor(long m, long b);

// p-adic valuation result; v_p(0) is the distinguished infinite value, and
// arithmetic with it must be explicit at the call site.
class Valuation {
 public:
  static Valuation infinite() { return Valuation(true, 0); }
  static Valuation of(long v) { return Valuation(false, v); }
  bool is_infinite() const { return inf_; }
  long value() const {
    if (inf_) throw std::logic_error("valuation is infinite");
    return v_;
  }
  /// value() >= bound, with the convention that infinity dominates.
  bool at_least(long bound) const { return inf_ || v_ >= bound; }
  Valuation operator+(const Valuation& o) const {
    if (inf_ || o.inf_) return infinite();
    return of(v_ + o.v_);
  }
  bool operator==(const Valuation& o) const {
    return inf_ == o.inf_ && (inf_ || v_ == o.v_);
  }

 private:
  Valuation(bool inf, long v) : inf_(inf), v_(v) {}
  bool inf_;
  long v_;
};

Valuation padic_valuation(long p, const BigRational& x);
long padic_valuation_nonzero(long p, const BigInt& x);

// A product of primes raised to (possibly rational) exponents, never
// materialized unless all exponents are non-negative integers. Invariant:
// keys are primes and no zero exponent is stored.
class PrimePowerProduct {
 public:
  void multiply_by(long prime, const BigRational& exponent);
  const std::map<long, BigRational>& exponents() const { return exp_; }
  BigRational exponent_of(long prime) const;

  PrimePowerProduct operator*(const PrimePowerProduct& o) const;
  /// Raises to the n-th power (multiplies every exponent by n).
  PrimePowerProduct pow(long n) const;

  bool is_integral() const;          // all exponents non-negative integers
  BigInt to_integer() const;         // requires is_integral()
  Real log_value(long prec) const;   // sum e * log p
  double log_value_d() const;

 private:
  std::map<long, BigRational> exp_;
};

/// Exact Bernoulli number B_{2j} (B_2 = 1/6, B_4 = -1/30, ...). Thread-safe,
/// cached.
BigRational bernoulli_2j(long j);

/// floor(x) for a rational x, as a BigInt.
BigInt rational_floor(const BigRational& x);
/// x - floor(x).
BigRational rational_frac(const BigRational& x);

/// Approximate log2(|q|); 0 for q == 0. Used only for sizing float work.
double rational_log2_abs(const BigRational& q);

/// Best rational approximation to x with denominator <= max_den
/// (continued-fraction convergent; x given as a Real).
BigRational rational_approx(const Real& x, long max_den);

long isqrt_long(long n);

}  // namespace zetaforms
