#include "renorm/kernels.hpp"

#ifdef RENORM_HAVE_AVX2

#include <immintrin.h>

#include <cmath>

namespace renorm::kern {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sumsq_avx2(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(a + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * a[i];
  return s;
}

double sum_pow4_avx2(const double* a, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  if (w) {
    for (; i + 4 <= n; i += 4) {
      __m256d v = _mm256_loadu_pd(a + i);
      __m256d q = _mm256_mul_pd(v, v);
      acc = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i), q), q, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
      double q = a[i] * a[i];
      s += w[i] * q * q;
    }
    return s;
  }
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(a + i);
    __m256d q = _mm256_mul_pd(v, v);
    acc = _mm256_fmadd_pd(q, q, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    double q = a[i] * a[i];
    s += q * q;
  }
  return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, r);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_avx2(double alpha, double* x, std::size_t n) {
  __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) x[i] *= alpha;
}

void matvec_avx2(const double* m, const double* x, double* y, std::size_t rows,
                 std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot_avx2(m + r * cols, x, cols);
}

double max_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
  const __m256d signmask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_max_pd(acc, _mm256_andnot_pd(signmask, d));
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  double mx = lanes[0];
  for (int k = 1; k < 4; ++k) mx = lanes[k] > mx ? lanes[k] : mx;
  for (; i < n; ++i) {
    double d = std::fabs(a[i] - b[i]);
    if (d > mx) mx = d;
  }
  return mx;
}

}  // namespace

const Ops* simd_ops_or_null() {
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma"))
    return nullptr;
  static const Ops ops{"avx2",        dot_avx2,   sumsq_avx2, sum_pow4_avx2,
                       axpy_avx2,     scale_avx2, matvec_avx2,
                       max_abs_diff_avx2};
  return &ops;
}

}  // namespace renorm::kern

#endif  // RENORM_HAVE_AVX2
