#include "kernels_impl.hpp"

namespace kantian::kernels::detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

void poly2_grid_scalar(double c0, double c1, double c2, double lo, double step,
                       double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double t = lo + static_cast<double>(k) * step;
    out[k] = c0 + t * (c1 + t * c2);
  }
}

std::size_t argmax_scalar(const double* v, std::size_t n) {
  std::size_t best = n;
  for (std::size_t k = 0; k < n; ++k) {
    if (v[k] != v[k]) continue;
    if (best == n || v[k] > v[best]) best = k;
  }
  return best;
}

}  // namespace kantian::kernels::detail
