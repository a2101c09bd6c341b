#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "renorm/kernels.hpp"

namespace renorm {

using Vec = std::vector<double>;

struct argument_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct spec_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense square matrix, row-major. Everything in this project is small
// (n <= ~32), so LU with partial pivoting covers solves, inverses and the
// reciprocal condition number estimate.
struct Mat {
  int n = 0;
  std::vector<double> a;

  Mat() = default;
  explicit Mat(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, 0.0) {}
  Mat(int dim, std::vector<double> entries) : n(dim), a(std::move(entries)) {
    if (a.size() != static_cast<size_t>(n) * n)
      throw argument_error("matrix entry count does not match dimension");
  }

  static Mat identity(int dim) {
    Mat m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
  }

  double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

inline Vec operator+(const Vec& x, const Vec& y) {
  Vec r = x;
  kern::active_ops().axpy(1.0, y.data(), r.data(), r.size());
  return r;
}
inline Vec operator-(const Vec& x, const Vec& y) {
  Vec r = x;
  kern::active_ops().axpy(-1.0, y.data(), r.data(), r.size());
  return r;
}
inline Vec operator*(double t, const Vec& x) {
  Vec r = x;
  kern::active_ops().scale(t, r.data(), r.size());
  return r;
}

double dot(const Vec& x, const Vec& y);
double norm2(const Vec& x);
double dist2(const Vec& x, const Vec& y);
double max_abs(const Vec& x);

Vec matvec(const Mat& m, const Vec& x);
Mat matmul(const Mat& a, const Mat& b);
Mat transpose(const Mat& m);
Mat mat_add(const Mat& a, const Mat& b);
Mat mat_scale(double t, const Mat& m);
double frobenius_dist(const Mat& a, const Mat& b);
double mat_max_abs(const Mat& m);

// LU with partial pivoting; throws argument_error when rcond < rcond_floor.
Mat inverse(const Mat& m, double rcond_floor = 1e-10);
Vec solve(const Mat& m, const Vec& b, double rcond_floor = 1e-10);
// ||A||_1 * ||A^-1||_1 reciprocal; 0 for singular matrices.
double rcond(const Mat& m);

// Rank of the column set within the given threshold (modified Gram-Schmidt).
int rank_of(const std::vector<Vec>& vectors, double threshold = 1e-8);

// Orthonormal basis of the span (euclidean), modified Gram-Schmidt.
std::vector<Vec> orthonormal_basis(const std::vector<Vec>& vectors,
                                   double threshold = 1e-12);

// Euclidean projection of x onto span(basis); basis must be orthonormal.
Vec project_onto(const std::vector<Vec>& basis, const Vec& x);

// Solve T * S = W for T given n independent columns s_i with images w_i.
Mat solve_linear_map(const std::vector<Vec>& s, const std::vector<Vec>& w);

std::string format_vec(const Vec& x);

}  // namespace renorm
