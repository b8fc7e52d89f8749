#include "zetaforms/sieve.hpp"

#include <algorithm>
#include <numeric>

namespace zetaforms {

bool SieveSets::divides_period(long n) const {
  if (n <= 0) return false;
  return mpz_divisible_p(BigInt(n).get_mpz_t(), period.get_mpz_t()) != 0;
}

SieveSets build_sieve_sets(long B, long M, const BigRational& r) {
  if (B < 1) throw std::invalid_argument("B must be a positive integer");
  if (M < 1) throw std::invalid_argument("M must be a positive integer");
  if (r <= 0) throw std::invalid_argument("r must be positive");

  SieveSets sv;
  sv.B = B;

  // phi(b) >= sqrt(b/2) for b > 6, so phi(b) <= B forces b <= 2B^2 there.
  const long bound = 2 * B * B + 6;
  std::vector<long> phis(bound + 1, 0);
  for (long b = 1; b <= bound; ++b) {
    phis[b] = euler_phi(b);
    if (phis[b] <= B) sv.psi.push_back(b);
  }

  const BigRational two_r_plus_1 = 2 * r + 1;
  BigInt lcm_pm1 = 1;
  for (long b : sv.psi) {
    const long phi_b = phis[b];
    for (long v = 1; v <= b; ++v) {
      if (std::gcd(v, b) == 1) sv.z.push_back(make_rational(v, b));
    }
    // prime decomposition of b drives A1, A2 and the period
    long rest = b;
    auto absorb = [&](long p, long e) {
      sv.a1.multiply_by(p, two_r_plus_1 * M * phi_b * e);
      sv.a2.multiply_by(p, two_r_plus_1 * M * phi_b / BigRational(p - 1));
      mpz_lcm_ui(lcm_pm1.get_mpz_t(), lcm_pm1.get_mpz_t(),
                 static_cast<unsigned long>(p - 1));
    };
    for (long p = 2; p * p <= rest; ++p) {
      if (rest % p == 0) {
        long e = 0;
        while (rest % p == 0) {
          rest /= p;
          ++e;
        }
        absorb(p, e);
      }
    }
    if (rest > 1) absorb(rest, 1);
  }
  std::sort(sv.z.begin(), sv.z.end());

  sv.period = 2 * BigInt(r.get_den()) * lcm_pm1;
  return sv;
}

}  // namespace zetaforms
