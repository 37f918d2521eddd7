// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <cstdlib>
#include <cstring>

#include "pcbplace/simd/kernels.hpp"

namespace pcbplace::simd {

namespace {

constexpr Kernels kScalar{Backend::Scalar, "scalar", detail::dot_scalar, detail::axpy_scalar, detail::relu_scalar,
                          detail::adam_scalar};

#if defined(PCBPLACE_WITH_AVX2)
constexpr Kernels kAvx2{Backend::Avx2, "avx2", detail::dot_avx2, detail::axpy_avx2, detail::relu_avx2,
                        detail::adam_avx2};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const Kernels *initial_choice() {
  const char *env = std::getenv("PCBPLACE_SIMD");
  if (env && std::strcmp(env, "scalar") == 0)
    return &kScalar;
  if (const Kernels *k = avx2_kernels())
    return k;
  return &kScalar;
}

std::atomic<const Kernels *> &current() {
  static std::atomic<const Kernels *> table{initial_choice()};
  return table;
}

} // namespace

const Kernels &scalar_kernels() { return kScalar; }

const Kernels *avx2_kernels() {
#if defined(PCBPLACE_WITH_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const Kernels &active() { return *current().load(std::memory_order_acquire); }

bool select_backend(Backend backend) {
  const Kernels *table = backend == Backend::Scalar ? &kScalar : avx2_kernels();
  if (!table)
    return false;
  current().store(table, std::memory_order_release);
  return true;
}

} // namespace pcbplace::simd
