#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"

namespace kantian::kernels {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::Scalar, detail::dot_scalar,
                                 detail::poly2_grid_scalar, detail::argmax_scalar};
  return table;
}

const KernelTable* avx2_table() {
#if defined(KANTIAN_BUILD_AVX2)
  static const KernelTable table{Isa::Avx2, detail::dot_avx2,
                                 detail::poly2_grid_avx2, detail::argmax_avx2};
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_table() {
#if defined(KANTIAN_BUILD_NEON)
  // Advanced SIMD is mandatory on aarch64.
  static const KernelTable table{Isa::Neon, detail::dot_neon,
                                 detail::poly2_grid_neon, detail::argmax_neon};
  return &table;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& select_table() {
  const char* forced = std::getenv("KANTIAN_SIMD");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return scalar_table();
  if (const KernelTable* t = avx2_table()) return *t;
  if (const KernelTable* t = neon_table()) return *t;
  return scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select_table();
  return table;
}

}  // namespace kantian::kernels
