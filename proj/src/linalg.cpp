#include "renorm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace renorm {

double dot(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw argument_error("dot: dimension mismatch");
  return kern::active_ops().dot(x.data(), y.data(), x.size());
}

double norm2(const Vec& x) {
  return std::sqrt(kern::active_ops().sumsq(x.data(), x.size()));
}

double dist2(const Vec& x, const Vec& y) {
  Vec d = x - y;
  return norm2(d);
}

double max_abs(const Vec& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::fabs(v));
  return m;
}

Vec matvec(const Mat& m, const Vec& x) {
  if (static_cast<int>(x.size()) != m.n)
    throw argument_error("matvec: dimension mismatch");
  Vec y(m.n);
  kern::active_ops().matvec(m.a.data(), x.data(), y.data(), m.n, m.n);
  return y;
}

Mat matmul(const Mat& a, const Mat& b) {
  if (a.n != b.n) throw argument_error("matmul: dimension mismatch");
  Mat c(a.n);
  Mat bt = transpose(b);
  const auto& ops = kern::active_ops();
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j)
      c.at(i, j) = ops.dot(&a.a[static_cast<size_t>(i) * a.n],
                           &bt.a[static_cast<size_t>(j) * a.n], a.n);
  return c;
}

Mat transpose(const Mat& m) {
  Mat t(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

Mat mat_add(const Mat& a, const Mat& b) {
  if (a.n != b.n) throw argument_error("mat_add: dimension mismatch");
  Mat c = a;
  kern::active_ops().axpy(1.0, b.a.data(), c.a.data(), c.a.size());
  return c;
}

Mat mat_scale(double t, const Mat& m) {
  Mat c = m;
  kern::active_ops().scale(t, c.a.data(), c.a.size());
  return c;
}

double frobenius_dist(const Mat& a, const Mat& b) {
  if (a.n != b.n) throw argument_error("frobenius_dist: dimension mismatch");
  double s = 0.0;
  for (size_t i = 0; i < a.a.size(); ++i) {
    double d = a.a[i] - b.a[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double mat_max_abs(const Mat& m) {
  double mx = 0.0;
  for (double v : m.a) mx = std::max(mx, std::fabs(v));
  return mx;
}

namespace {

// returns false when a pivot is exactly zero
bool lu_decompose(Mat& m, std::vector<int>& piv) {
  int n = m.n;
  piv.resize(n);
  std::iota(piv.begin(), piv.end(), 0);
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::fabs(m.at(k, k));
    for (int i = k + 1; i < n; ++i) {
      double v = std::fabs(m.at(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0.0) return false;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
      std::swap(piv[k], piv[p]);
    }
    for (int i = k + 1; i < n; ++i) {
      double f = m.at(i, k) / m.at(k, k);
      m.at(i, k) = f;
      for (int j = k + 1; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
    }
  }
  return true;
}

Vec lu_solve(const Mat& lu, const std::vector<int>& piv, const Vec& b) {
  int n = lu.n;
  Vec x(n);
  for (int i = 0; i < n; ++i) x[i] = b[piv[i]];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= lu.at(i, j) * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= lu.at(i, j) * x[j];
    x[i] /= lu.at(i, i);
  }
  return x;
}

double norm1(const Mat& m) {
  double best = 0.0;
  for (int j = 0; j < m.n; ++j) {
    double s = 0.0;
    for (int i = 0; i < m.n; ++i) s += std::fabs(m.at(i, j));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

double rcond(const Mat& m) {
  Mat lu = m;
  std::vector<int> piv;
  if (!lu_decompose(lu, piv)) return 0.0;
  Mat inv(m.n);
  Vec e(m.n, 0.0);
  for (int j = 0; j < m.n; ++j) {
    e[j] = 1.0;
    Vec col = lu_solve(lu, piv, e);
    for (int i = 0; i < m.n; ++i) inv.at(i, j) = col[i];
    e[j] = 0.0;
  }
  double na = norm1(m), ni = norm1(inv);
  if (na == 0.0 || ni == 0.0) return 0.0;
  return 1.0 / (na * ni);
}

Mat inverse(const Mat& m, double rcond_floor) {
  if (rcond(m) < rcond_floor)
    throw argument_error("matrix is singular or too ill-conditioned");
  Mat lu = m;
  std::vector<int> piv;
  lu_decompose(lu, piv);
  Mat inv(m.n);
  Vec e(m.n, 0.0);
  for (int j = 0; j < m.n; ++j) {
    e[j] = 1.0;
    Vec col = lu_solve(lu, piv, e);
    for (int i = 0; i < m.n; ++i) inv.at(i, j) = col[i];
    e[j] = 0.0;
  }
  return inv;
}

Vec solve(const Mat& m, const Vec& b, double rcond_floor) {
  if (rcond(m) < rcond_floor)
    throw argument_error("matrix is singular or too ill-conditioned");
  Mat lu = m;
  std::vector<int> piv;
  lu_decompose(lu, piv);
  return lu_solve(lu, piv, b);
}

int rank_of(const std::vector<Vec>& vectors, double threshold) {
  std::vector<Vec> basis;
  for (const Vec& v : vectors) {
    Vec r = v;
    for (const Vec& b : basis) kern::active_ops().axpy(-dot(b, r), b.data(),
                                                       r.data(), r.size());
    double len = norm2(r);
    if (len > threshold) {
      kern::active_ops().scale(1.0 / len, r.data(), r.size());
      basis.push_back(std::move(r));
    }
  }
  return static_cast<int>(basis.size());
}

std::vector<Vec> orthonormal_basis(const std::vector<Vec>& vectors,
                                   double threshold) {
  std::vector<Vec> basis;
  for (const Vec& v : vectors) {
    Vec r = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& b : basis)
        kern::active_ops().axpy(-dot(b, r), b.data(), r.data(), r.size());
    double len = norm2(r);
    if (len > threshold) {
      kern::active_ops().scale(1.0 / len, r.data(), r.size());
      basis.push_back(std::move(r));
    }
  }
  return basis;
}

Vec project_onto(const std::vector<Vec>& basis, const Vec& x) {
  Vec p(x.size(), 0.0);
  for (const Vec& b : basis)
    kern::active_ops().axpy(dot(b, x), b.data(), p.data(), p.size());
  return p;
}

Mat solve_linear_map(const std::vector<Vec>& s, const std::vector<Vec>& w) {
  if (s.empty() || s.size() != w.size())
    throw argument_error("solve_linear_map: bad input sizes");
  int n = static_cast<int>(s[0].size());
  if (static_cast<int>(s.size()) != n)
    throw argument_error("solve_linear_map: need n columns");
  Mat smat(n), wmat(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      smat.at(i, j) = s[j][i];
      wmat.at(i, j) = w[j][i];
    }
  // T = W * S^-1
  return matmul(wmat, inverse(smat));
}

std::string format_vec(const Vec& x) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < x.size(); ++i) {
    if (i) os << ", ";
    os << x[i];
  }
  os << ")";
  return os.str();
}

}  // namespace renorm
