#include "renorm/matrix_group.hpp"

#include <cmath>
#include <deque>

namespace renorm {

int MatrixGroup::index_of(const Mat& m, double tol) const {
  int best = -1;
  double best_d = tol;
  for (size_t i = 0; i < elements.size(); ++i) {
    double d = frobenius_dist(elements[i], m);
    if (d <= best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

MatrixGroup group_closure(const std::vector<Mat>& generators, int cap,
                          double dedup_tol) {
  if (generators.empty()) throw argument_error("group_closure: no generators");
  int n = generators[0].n;
  for (const Mat& g : generators) {
    if (g.n != n) throw argument_error("group_closure: dimension mismatch");
    if (rcond(g) < 1e-10)
      throw argument_error("group_closure: generator is not invertible");
  }

  MatrixGroup grp;
  grp.elements.push_back(Mat::identity(n));
  auto find = [&](const Mat& m) {
    for (size_t i = 0; i < grp.elements.size(); ++i)
      if (frobenius_dist(grp.elements[i], m) <= dedup_tol)
        return static_cast<int>(i);
    return -1;
  };

  std::deque<int> work;
  for (const Mat& g : generators) {
    if (find(g) < 0) {
      grp.elements.push_back(g);
      work.push_back(static_cast<int>(grp.elements.size()) - 1);
    }
  }
  while (!work.empty()) {
    int i = work.front();
    work.pop_front();
    for (const Mat& g : generators) {
      Mat p = matmul(grp.elements[i], g);
      if (find(p) < 0) {
        if (static_cast<int>(grp.elements.size()) >= cap)
          throw solver_error(
              "group_closure: cap exceeded, group is likely infinite");
        grp.elements.push_back(std::move(p));
        work.push_back(static_cast<int>(grp.elements.size()) - 1);
      }
      Mat q = matmul(g, grp.elements[i]);
      if (find(q) < 0) {
        if (static_cast<int>(grp.elements.size()) >= cap)
          throw solver_error(
              "group_closure: cap exceeded, group is likely infinite");
        grp.elements.push_back(std::move(q));
        work.push_back(static_cast<int>(grp.elements.size()) - 1);
      }
    }
  }

  int order = static_cast<int>(grp.elements.size());
  grp.table.order = order;
  grp.table.table.assign(static_cast<size_t>(order) * order, -1);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      int k = find(matmul(grp.elements[i], grp.elements[j]));
      if (k < 0)
        throw solver_error("group_closure: product escaped the closure");
      grp.table.table[static_cast<size_t>(i) * order + j] = k;
    }
  grp.table.identity = 0;
  grp.table.inverse.assign(order, -1);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j)
      if (grp.table.at(i, j) == 0 && grp.table.at(j, i) == 0)
        grp.table.inverse[i] = j;
  grp.table.validate();

  Mat minus_id = mat_scale(-1.0, Mat::identity(n));
  grp.minus_id_index = grp.index_of(minus_id, dedup_tol);
  grp.has_minus_id = grp.minus_id_index >= 0;
  return grp;
}

std::shared_ptr<const MatrixGroup> make_shared_group(
    const std::vector<Mat>& generators, int cap, double dedup_tol) {
  return std::make_shared<MatrixGroup>(group_closure(generators, cap, dedup_tol));
}

Mat rotation2(double angle) {
  Mat r(2);
  r.at(0, 0) = std::cos(angle);
  r.at(0, 1) = -std::sin(angle);
  r.at(1, 0) = std::sin(angle);
  r.at(1, 1) = std::cos(angle);
  return r;
}

}  // namespace renorm
