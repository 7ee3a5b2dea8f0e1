#include "gibbs/simd/kernels.hpp"

#include <stdexcept>

#include "eft.hpp"

namespace gibbs::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void matvec_scalar(const double* m, const double* x, double* y, std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot_scalar(m + r * cols, x, cols);
}

double inverse_power(double j, int q) {
  double d = j;
  for (int k = 1; k < q; ++k) d *= j;
  return 1.0 / d;
}

CompensatedSum inverse_power_sum_scalar(std::uint64_t first, std::uint64_t last, int q) {
  if (q < 1 || q > 4) throw std::invalid_argument("inverse_power_sum: q must be in 1..4");
  CompensatedSum acc;
  if (first == 0 || last < first) return acc;
  // Smallest terms first.
  for (std::uint64_t j = last;; --j) {
    double s, e;
    eft::two_sum(acc.hi, inverse_power(static_cast<double>(j), q), s, e);
    acc.hi = s;
    acc.lo += e;
    if (j == first) break;
  }
  return acc;
}

}  // namespace

namespace detail {
const KernelTable scalar_table{Isa::scalar, &dot_scalar, &matvec_scalar, &inverse_power_sum_scalar};
}

}  // namespace gibbs::simd
