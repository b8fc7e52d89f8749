#include "zetaforms/params.hpp"

#include <sstream>

namespace zetaforms {

void ProofParameters::validate() const {
  if (M < 1) throw std::invalid_argument("M must be a positive integer");
  if (J < 1) throw std::invalid_argument("J must be a positive integer");
  if (static_cast<long>(deltas.size()) != J)
    throw std::invalid_argument("deltas must have exactly J entries");
  for (long d : deltas)
    if (d < 0) throw std::invalid_argument("deltas must be non-negative");
  for (size_t i = 1; i < deltas.size(); ++i)
    if (deltas[i] < deltas[i - 1])
      throw std::invalid_argument("deltas must be non-decreasing");
  if (2 * deltas.back() >= M)
    throw std::invalid_argument("deltas must satisfy 2*delta_J < M");
  if (r <= 0) throw std::invalid_argument("r must be positive");
  if (s) {
    if (*s < 1) throw std::invalid_argument("s must be positive");
    if (*s % (2 * J) != 0)
      throw std::invalid_argument("s must be a multiple of 2J");
  }
  if (B && *B < 1) throw std::invalid_argument("B must be a positive integer");
}

long ProofParameters::den_r() const {
  if (!r.get_den().fits_slong_p())
    throw std::invalid_argument("denominator of r does not fit in a machine word");
  return r.get_den().get_si();
}

long ProofParameters::s_over_J() const {
  if (!s) throw std::invalid_argument("s is not set");
  return *s / J;
}

bool ProofParameters::satisfies_scale_condition() const {
  if (!s || !B) return false;
  // s >= 10 (2r+1) M B^2
  BigRational lhs(*s);
  BigRational rhs = BigRational(10) * (2 * r + 1) * BigRational(M) * BigRational(*B) * BigRational(*B);
  return lhs >= rhs;
}

std::string ProofParameters::digest() const {
  std::ostringstream os;
  os << "M=" << M << ";d=";
  for (size_t i = 0; i < deltas.size(); ++i) {
    if (i) os << ",";
    os << deltas[i];
  }
  return os.str();
}

}  // namespace zetaforms
