// Timing comparison of the OpenMP kernels against their serial references:
// omega table construction, the phi prime product and the partial-fraction
// expansion.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>

#include "zetaforms/forms.hpp"
#include "zetaforms/omega.hpp"

using namespace zetaforms;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

template <typename F>
double timed(F&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return seconds(t0, t1);
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-34s %9.3fs %9.3fs %7.2fx\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  bool heavy = argc > 1 && std::string(argv[1]) == "--heavy";
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-34s %10s %10s %8s\n", "kernel", "serial", "parallel", "speedup");

  {
    const long M = 57;
    const std::vector<long> d = {1, 1, 1, 1, 1, 2, 2, 3, 3, 5, 5, 6, 6, 7, 8, 9, 10, 12};
    OmegaTableOptions ser, par;
    ser.parallel = false;
    ser.validation_samples = 0;
    par.parallel = true;
    par.validation_samples = 0;
    StepFunction a, b;
    double ts = timed([&] { a = omega_table(M, d, ser); });
    double tp = timed([&] { b = omega_table(M, d, par); });
    row("omega table (M=57, J=18)", ts, tp);
    if (a.values != b.values) std::printf("  !! serial/parallel tables differ\n");
  }

  {
    const long n = 100000, M = 7;
    const std::vector<long> d = {0, 1};
    double l1 = 0, l2 = 0;
    double ts = timed([&] { l1 = log_phi_product(n, M, d, false); });
    double tp = timed([&] { l2 = log_phi_product(n, M, d, true); });
    row("phi prime product (n=1e5, M=7)", ts, tp);
    if (l1 != l2) std::printf("  !! serial/parallel logs differ\n");
  }

  {
    ProofParameters p;
    p.M = 7;
    p.J = 2;
    p.deltas = {0, 1};
    p.r = BigRational(1);
    p.s = 8;
    p.B = 1;
    const long n = heavy ? 66 : 22;
    SieveSets sv = build_sieve_sets(*p.B, p.M, p.r);
    FactoredForm form = build_rational_function(n, p, sv);
    PartialFractionTable a, b;
    double ts = timed([&] { a = partial_fractions(form, false); });
    double tp = timed([&] { b = partial_fractions(form, true); });
    std::string name = "partial fractions (M=7, n=" + std::to_string(n) + ")";
    row(name.c_str(), ts, tp);
    bool same = a.coef == b.coef;
    if (!same) std::printf("  !! serial/parallel tables differ\n");
  }

  if (heavy) {
    const long M = 563;
    std::vector<long> d = {1,  1,  1,  1,  1,  2,  2,  3,  3,  4,  4,  5,  6,  7,  8,
                           9,  10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23,
                           24, 26, 28, 30, 32, 34, 36, 38, 40, 42, 44, 46, 48, 50, 52,
                           54, 56, 58, 60, 62, 64, 66, 68, 70, 72, 74, 76, 78, 80, 82,
                           84, 86, 88, 90, 92, 94, 96, 98, 100, 102, 104, 108, 112, 116,
                           120, 124};
    OmegaTableOptions ser, par;
    ser.parallel = false;
    ser.validation_samples = 0;
    par.parallel = true;
    par.validation_samples = 0;
    StepFunction a, b;
    double ts = timed([&] { a = omega_table(M, d, ser); });
    double tp = timed([&] { b = omega_table(M, d, par); });
    row("omega table (M=563, J=76)", ts, tp);
    if (a.values != b.values) std::printf("  !! serial/parallel tables differ\n");
  }
  return 0;
}
