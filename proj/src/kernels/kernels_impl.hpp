#pragma once

#include "kantian/kernels.hpp"

namespace kantian::kernels::detail {

double dot_scalar(const double* a, const double* b, std::size_t n);
void poly2_grid_scalar(double c0, double c1, double c2, double lo, double step,
                       double* out, std::size_t n);
std::size_t argmax_scalar(const double* v, std::size_t n);

#if defined(KANTIAN_BUILD_AVX2)
double dot_avx2(const double* a, const double* b, std::size_t n);
void poly2_grid_avx2(double c0, double c1, double c2, double lo, double step,
                     double* out, std::size_t n);
std::size_t argmax_avx2(const double* v, std::size_t n);
#endif

#if defined(KANTIAN_BUILD_NEON)
double dot_neon(const double* a, const double* b, std::size_t n);
void poly2_grid_neon(double c0, double c1, double c2, double lo, double step,
                     double* out, std::size_t n);
std::size_t argmax_neon(const double* v, std::size_t n);
#endif

}  // namespace kantian::kernels::detail
