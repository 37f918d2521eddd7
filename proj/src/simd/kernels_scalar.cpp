// SPDX-License-Identifier: Apache-2.0
// Reference kernels. Every SIMD variant is tested against these.
#include <cmath>

#include "pcbplace/simd/kernels.hpp"

namespace pcbplace::simd::detail {

double dot_scalar(const double *a, const double *b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    sum += a[i] * b[i];
  return sum;
}

void axpy_scalar(double alpha, const double *x, double *y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    y[i] += alpha * x[i];
}

void relu_scalar(double *x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    x[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void adam_scalar(double *params, const double *grads, double *m, double *v, std::size_t n, const AdamCoeffs &c) {
  const double one_minus_b1 = 1.0 - c.beta1;
  const double one_minus_b2 = 1.0 - c.beta2;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = grads[i];
    m[i] = c.beta1 * m[i] + one_minus_b1 * g;
    v[i] = c.beta2 * v[i] + one_minus_b2 * (g * g);
    const double mhat = m[i] * c.c1;
    const double vhat = v[i] * c.c2;
    params[i] -= c.lr * mhat / (std::sqrt(vhat) + c.eps);
  }
}

} // namespace pcbplace::simd::detail
