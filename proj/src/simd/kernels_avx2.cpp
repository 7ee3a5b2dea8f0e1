#include <immintrin.h>

#include <stdexcept>

#include "eft.hpp"
#include "gibbs/simd/kernels.hpp"

namespace gibbs::simd {
namespace {

double hsum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void matvec_avx2(const double* m, const double* x, double* y, std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot_avx2(m + r * cols, x, cols);
}

__m256d inverse_power(__m256d j, int q) {
  __m256d d = j;
  for (int k = 1; k < q; ++k) d = _mm256_mul_pd(d, j);
  return _mm256_div_pd(_mm256_set1_pd(1.0), d);
}

CompensatedSum inverse_power_sum_avx2(std::uint64_t first, std::uint64_t last, int q) {
  if (q < 1 || q > 4) throw std::invalid_argument("inverse_power_sum: q must be in 1..4");
  CompensatedSum out;
  if (first == 0 || last < first) return out;

  // Lane-wise TwoSum accumulators; the four lanes walk j downward in stride 4.
  __m256d hi = _mm256_setzero_pd();
  __m256d lo = _mm256_setzero_pd();
  const __m256d step = _mm256_set1_pd(-4.0);
  std::uint64_t top = last;
  const std::uint64_t count = last - first + 1;
  const std::uint64_t blocks = count / 4;
  __m256d j = _mm256_set_pd(static_cast<double>(top - 3), static_cast<double>(top - 2),
                            static_cast<double>(top - 1), static_cast<double>(top));
  for (std::uint64_t b = 0; b < blocks; ++b) {
    const __m256d t = inverse_power(j, q);
    const __m256d s = _mm256_add_pd(hi, t);
    const __m256d bb = _mm256_sub_pd(s, hi);
    const __m256d e = _mm256_add_pd(_mm256_sub_pd(hi, _mm256_sub_pd(s, bb)), _mm256_sub_pd(t, bb));
    hi = s;
    lo = _mm256_add_pd(lo, e);
    j = _mm256_add_pd(j, step);
  }
  top -= blocks * 4;

  alignas(32) double h[4];
  alignas(32) double l[4];
  _mm256_store_pd(h, hi);
  _mm256_store_pd(l, lo);
  for (int k = 0; k < 4; ++k) {
    double s, e;
    eft::two_sum(out.hi, h[k], s, e);
    out.hi = s;
    out.lo += e + l[k];
  }
  // Remaining (largest) terms, scalar.
  for (std::uint64_t jj = top; jj >= first && jj > 0; --jj) {
    double d = static_cast<double>(jj);
    double p = d;
    for (int k = 1; k < q; ++k) p *= d;
    double s, e;
    eft::two_sum(out.hi, 1.0 / p, s, e);
    out.hi = s;
    out.lo += e;
    if (jj == first) break;
  }
  return out;
}

}  // namespace

namespace detail {
const KernelTable avx2_table{Isa::avx2, &dot_avx2, &matvec_avx2, &inverse_power_sum_avx2};
}

}  // namespace gibbs::simd
