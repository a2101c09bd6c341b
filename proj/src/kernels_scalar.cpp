#include "renorm/kernels.hpp"

#include <cmath>

namespace renorm::kern {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sumsq_scalar(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

double sum_pow4_scalar(const double* a, const double* w, std::size_t n) {
  double s = 0.0;
  if (w) {
    for (std::size_t i = 0; i < n; ++i) {
      double q = a[i] * a[i];
      s += w[i] * q * q;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      double q = a[i] * a[i];
      s += q * q;
    }
  }
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void matvec_scalar(const double* m, const double* x, double* y,
                   std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = m + r * cols;
    double s = 0.0;
    for (std::size_t c = 0; c < cols; ++c) s += row[c] * x[c];
    y[r] = s;
  }
}

double max_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = std::fabs(a[i] - b[i]);
    if (d > m) m = d;
  }
  return m;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{"scalar",      dot_scalar,   sumsq_scalar,
                       sum_pow4_scalar, axpy_scalar, scale_scalar,
                       matvec_scalar, max_abs_diff_scalar};
  return ops;
}

}  // namespace renorm::kern
