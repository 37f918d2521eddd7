// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>

namespace pcbplace::simd {

enum class Backend { Scalar, Avx2 };

/// Per-step Adam constants. `c1` and `c2` are the reciprocal bias
/// corrections 1 / (1 - beta^t).
struct AdamCoeffs {
  double lr;
  double beta1;
  double beta2;
  double eps;
  double c1;
  double c2;
};

/// Table of dense double-precision kernels. All pointers are non-null.
struct Kernels {
  Backend backend;
  const char *name;
  /// sum_i a[i] * b[i]
  double (*dot)(const double *a, const double *b, std::size_t n);
  /// y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double *x, double *y, std::size_t n);
  /// x[i] = max(x[i], 0)
  void (*relu)(double *x, std::size_t n);
  /// In-place Adam update of params with moment accumulators m and v.
  void (*adam)(double *params, const double *grads, double *m, double *v, std::size_t n, const AdamCoeffs &c);
};

const Kernels &scalar_kernels();

/// AVX2+FMA table, or nullptr when not compiled in or not supported by the
/// running CPU.
const Kernels *avx2_kernels();

/// Kernels used by the library. Chosen once at first use: AVX2 when the
/// CPU supports it, unless the environment variable PCBPLACE_SIMD is set to
/// "scalar".
const Kernels &active();

/// Overrides the active table (tests and benchmarks). Returns false if the
/// requested backend is unavailable.
bool select_backend(Backend backend);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

namespace detail {
double dot_scalar(const double *a, const double *b, std::size_t n);
void axpy_scalar(double alpha, const double *x, double *y, std::size_t n);
void relu_scalar(double *x, std::size_t n);
void adam_scalar(double *params, const double *grads, double *m, double *v, std::size_t n, const AdamCoeffs &c);

double dot_avx2(const double *a, const double *b, std::size_t n);
void axpy_avx2(double alpha, const double *x, double *y, std::size_t n);
void relu_avx2(double *x, std::size_t n);
void adam_avx2(double *params, const double *grads, double *m, double *v, std::size_t n, const AdamCoeffs &c);
} // namespace detail

} // namespace pcbplace::simd
