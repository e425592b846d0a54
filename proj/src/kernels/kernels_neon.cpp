#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace kantian::kernels::detail {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    acc0 = vaddq_f64(acc0, vmulq_f64(vld1q_f64(a + k), vld1q_f64(b + k)));
    acc1 = vaddq_f64(acc1, vmulq_f64(vld1q_f64(a + k + 2), vld1q_f64(b + k + 2)));
  }
  acc0 = vaddq_f64(acc0, acc1);
  double s = vgetq_lane_f64(acc0, 0) + vgetq_lane_f64(acc0, 1);
  for (; k < n; ++k) s += a[k] * b[k];
  return s;
}

void poly2_grid_neon(double c0, double c1, double c2, double lo, double step,
                     double* out, std::size_t n) {
  const float64x2_t vc0 = vdupq_n_f64(c0);
  const float64x2_t vc1 = vdupq_n_f64(c1);
  const float64x2_t vc2 = vdupq_n_f64(c2);
  const float64x2_t vlo = vdupq_n_f64(lo);
  const float64x2_t vstep = vdupq_n_f64(step);
  const float64x2_t two = vdupq_n_f64(2.0);
  const double init[2] = {0.0, 1.0};
  float64x2_t idx = vld1q_f64(init);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    // Separate mul/add (no vfmaq) to match the scalar rounding.
    const float64x2_t t = vaddq_f64(vlo, vmulq_f64(idx, vstep));
    const float64x2_t inner = vaddq_f64(vc1, vmulq_f64(t, vc2));
    vst1q_f64(out + k, vaddq_f64(vc0, vmulq_f64(t, inner)));
    idx = vaddq_f64(idx, two);
  }
  for (; k < n; ++k) {
    const double t = lo + static_cast<double>(k) * step;
    out[k] = c0 + t * (c1 + t * c2);
  }
}

std::size_t argmax_neon(const double* v, std::size_t n) {
  if (n < 4) return argmax_scalar(v, n);
  // vmaxnmq ignores a quiet NaN operand.
  float64x2_t vmax = vdupq_n_f64(-__builtin_inf());
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) vmax = vmaxnmq_f64(vmax, vld1q_f64(v + k));
  double m = vmaxnmvq_f64(vmax);
  for (; k < n; ++k)
    if (v[k] > m) m = v[k];
  for (k = 0; k < n; ++k)
    if (v[k] == m) return k;
  return argmax_scalar(v, n);
}

}  // namespace kantian::kernels::detail
