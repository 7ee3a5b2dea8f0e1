#include <cstdlib>
#include <stdexcept>
#include <string>

#include "gibbs/simd/kernels.hpp"

namespace gibbs::simd {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if GIBBS_HAVE_AVX2_TU
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!supported(isa)) throw std::runtime_error("simd: ISA not supported on this host: " + std::string(isa_name(isa)));
  switch (isa) {
    case Isa::scalar: return detail::scalar_table;
    case Isa::avx2:
#if GIBBS_HAVE_AVX2_TU
      return detail::avx2_table;
#else
      break;
#endif
  }
  return detail::scalar_table;
}

namespace {
const KernelTable& select() {
  const char* forced = std::getenv("GIBBS_SIMD");
  if (forced != nullptr && std::string(forced) == "scalar") return detail::scalar_table;
  if (supported(Isa::avx2)) return table(Isa::avx2);
  return detail::scalar_table;
}
}  // namespace

const KernelTable& active() {
  static const KernelTable& chosen = select();
  return chosen;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("simd::dot: length mismatch");
  return active().dot(a.data(), b.data(), a.size());
}

void matvec(std::span<const double> m, std::span<const double> x, std::span<double> y) {
  if (m.size() != x.size() * y.size()) throw std::invalid_argument("simd::matvec: shape mismatch");
  active().matvec(m.data(), x.data(), y.data(), y.size(), x.size());
}

CompensatedSum inverse_power_sum(std::uint64_t first, std::uint64_t last, int q) {
  return active().inverse_power_sum(first, last, q);
}

}  // namespace gibbs::simd
