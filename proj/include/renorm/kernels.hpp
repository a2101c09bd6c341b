#pragma once

#include <cstddef>

// Dense double-precision primitives behind the hot loops (norm evaluation,
// matrix-vector products, falsifier sampling). A scalar reference
// implementation always exists; on x86-64 an AVX2+FMA variant is selected at
// runtime when the CPU supports it, on aarch64 a NEON variant. The variants
// are equivalence-tested against the scalar kernels in tests/test_kernels.cpp.

namespace renorm::kern {

struct Ops {
  const char* name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sumsq)(const double* a, std::size_t n);
  // sum of w[i] * a[i]^4; w == nullptr means unit weights
  double (*sum_pow4)(const double* a, const double* w, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  void (*scale)(double alpha, double* x, std::size_t n);
  // y = M x, M row-major rows x cols
  void (*matvec)(const double* m, const double* x, double* y, std::size_t rows,
                 std::size_t cols);
  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
};

const Ops& scalar_ops();

// nullptr when this build has no SIMD variant or the CPU lacks the features
const Ops* simd_ops_or_null();

// Runtime-selected kernels. Honors set_forced() and the RENORM_KERNELS
// environment variable ("scalar" or the SIMD variant name).
const Ops& active_ops();

// nullptr restores automatic selection
void set_forced(const char* name);

}  // namespace renorm::kern
