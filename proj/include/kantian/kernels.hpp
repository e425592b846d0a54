#pragma once

// Data-parallel inner loops used by the numerical oracles.
//
// Every kernel has a scalar reference implementation and optional vector
// variants (AVX2 on x86-64, NEON on aarch64). The active table is chosen once
// at first use from the CPU features; KANTIAN_SIMD=scalar in the environment
// forces the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace kantian::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;

  /// Sum of a[k] * b[k]. Vector variants reassociate the sum.
  double (*dot)(const double* a, const double* b, std::size_t n);

  /// out[k] = c0 + t*(c1 + t*c2) with t = lo + k*step.
  /// Bit-identical across variants (same operation order, no contraction).
  void (*poly2_grid)(double c0, double c1, double c2, double lo, double step,
                     double* out, std::size_t n);

  /// Index of the first maximum; NaN entries never win. Returns n when every
  /// entry is NaN or n == 0.
  std::size_t (*argmax)(const double* v, std::size_t n);
};

const KernelTable& scalar_table();

/// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_table();
const KernelTable* neon_table();

/// Table selected for this process.
const KernelTable& active();

// Convenience wrappers over active().
inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

inline void poly2_grid(double c0, double c1, double c2, double lo, double step,
                       std::span<double> out) {
  active().poly2_grid(c0, c1, c2, lo, step, out.data(), out.size());
}

inline std::size_t argmax(std::span<const double> v) {
  return active().argmax(v.data(), v.size());
}

}  // namespace kantian::kernels
