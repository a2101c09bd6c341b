#include "renorm/kernels.hpp"

#ifdef RENORM_HAVE_NEON

#include <arm_neon.h>

#include <cmath>

namespace renorm::kern {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sumsq_neon(const double* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t v = vld1q_f64(a + i);
    acc = vfmaq_f64(acc, v, v);
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += a[i] * a[i];
  return s;
}

double sum_pow4_neon(const double* a, const double* w, std::size_t n) {
  double s = 0.0;
  if (w) {
    for (std::size_t i = 0; i < n; ++i) {
      double q = a[i] * a[i];
      s += w[i] * q * q;
    }
    return s;
  }
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t v = vld1q_f64(a + i);
    float64x2_t q = vmulq_f64(v, v);
    acc = vfmaq_f64(acc, q, q);
  }
  s = vaddvq_f64(acc);
  for (; i < n; ++i) {
    double q = a[i] * a[i];
    s += q * q;
  }
  return s;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_neon(double alpha, double* x, std::size_t n) {
  float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(x + i, vmulq_f64(va, vld1q_f64(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

void matvec_neon(const double* m, const double* x, double* y, std::size_t rows,
                 std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot_neon(m + r * cols, x, cols);
}

double max_abs_diff_neon(const double* a, const double* b, std::size_t n) {
  double mx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = std::fabs(a[i] - b[i]);
    if (d > mx) mx = d;
  }
  return mx;
}

}  // namespace

const Ops* simd_ops_or_null() {
  static const Ops ops{"neon",      dot_neon,   sumsq_neon, sum_pow4_neon,
                       axpy_neon,   scale_neon, matvec_neon,
                       max_abs_diff_neon};
  return &ops;
}

}  // namespace renorm::kern

#endif  // RENORM_HAVE_NEON
