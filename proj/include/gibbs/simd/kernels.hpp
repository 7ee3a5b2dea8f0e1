#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Data-parallel inner loops shared by the potential, kernel and dynamics
// modules. Every kernel has a scalar reference implementation; wider variants
// are selected once at runtime from the host CPU and must agree with the
// reference to the tolerances pinned in tests/test_simd.cpp.
namespace gibbs::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Unevaluated sum hi + lo produced by error-free accumulation.
struct CompensatedSum {
  double hi = 0.0;
  double lo = 0.0;
};

struct KernelTable {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// y = M x for a dense row-major rows x cols matrix.
  void (*matvec)(const double* m, const double* x, double* y, std::size_t rows, std::size_t cols);
  /// Sum of j^{-q} over first <= j <= last for integer 1 <= q <= 4, each term
  /// formed as 1/(j*...*j) and accumulated with error-free transformations.
  CompensatedSum (*inverse_power_sum)(std::uint64_t first, std::uint64_t last, int q);
};

bool supported(Isa isa) noexcept;

/// Kernel table for a specific ISA; throws std::runtime_error if the host
/// cannot run it.
const KernelTable& table(Isa isa);

/// Table chosen at first use: the widest supported ISA, unless the
/// GIBBS_SIMD environment variable is set to "scalar".
const KernelTable& active();

// Span conveniences over the active table.
double dot(std::span<const double> a, std::span<const double> b);
void matvec(std::span<const double> m, std::span<const double> x, std::span<double> y);
CompensatedSum inverse_power_sum(std::uint64_t first, std::uint64_t last, int q);

namespace detail {
extern const KernelTable scalar_table;
#if defined(__x86_64__) || defined(_M_X64)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace gibbs::simd
