#include <immintrin.h>

#include "kernels_impl.hpp"

namespace kantian::kernels::detail {

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4)));
  }
  for (; k + 4 <= n; k += 4)
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k)));
  acc0 = _mm256_add_pd(acc0, acc1);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc0);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; k < n; ++k) s += a[k] * b[k];
  return s;
}

void poly2_grid_avx2(double c0, double c1, double c2, double lo, double step,
                     double* out, std::size_t n) {
  const __m256d vc0 = _mm256_set1_pd(c0);
  const __m256d vc1 = _mm256_set1_pd(c1);
  const __m256d vc2 = _mm256_set1_pd(c2);
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vstep = _mm256_set1_pd(step);
  const __m256d four = _mm256_set1_pd(4.0);
  // Indices stay exact in double far beyond any grid we allocate.
  __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d t = _mm256_add_pd(vlo, _mm256_mul_pd(idx, vstep));
    const __m256d inner = _mm256_add_pd(vc1, _mm256_mul_pd(t, vc2));
    _mm256_storeu_pd(out + k, _mm256_add_pd(vc0, _mm256_mul_pd(t, inner)));
    idx = _mm256_add_pd(idx, four);
  }
  for (; k < n; ++k) {
    const double t = lo + static_cast<double>(k) * step;
    out[k] = c0 + t * (c1 + t * c2);
  }
}

std::size_t argmax_avx2(const double* v, std::size_t n) {
  if (n < 8) return argmax_scalar(v, n);
  // Pass 1: the maximum over non-NaN entries. _mm256_max_pd returns its second
  // operand when either is NaN, so keeping the running max second drops NaNs.
  __m256d vmax = _mm256_set1_pd(-__builtin_inf());
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) vmax = _mm256_max_pd(_mm256_loadu_pd(v + k), vmax);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vmax);
  double m = lanes[0];
  for (int l = 1; l < 4; ++l)
    if (lanes[l] > m) m = lanes[l];
  for (; k < n; ++k)
    if (v[k] > m) m = v[k];

  // Pass 2: first index equal to the maximum.
  const __m256d target = _mm256_set1_pd(m);
  k = 0;
  for (; k + 4 <= n; k += 4) {
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(v + k), target, _CMP_EQ_OQ));
    if (mask != 0) return k + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
  }
  for (; k < n; ++k)
    if (v[k] == m) return k;
  // All NaN, or every entry is -inf.
  return argmax_scalar(v, n);
}

}  // namespace kantian::kernels::detail
