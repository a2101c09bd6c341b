#include "renorm/complex_structures.hpp"

#include <cmath>
#include <sstream>

namespace renorm {

namespace {

double residual_sq_minus_id(const Mat& J) {
  Mat sq = matmul(J, J);
  Mat id = Mat::identity(J.n);
  return mat_max_abs(mat_add(sq, id));
}

}  // namespace

std::vector<int> find_square_roots_of_minus_id(const MatrixGroup& group,
                                               double tol) {
  std::vector<int> roots;
  for (int i = 0; i < group.order(); ++i)
    if (residual_sq_minus_id(group.elements[i]) <= tol) roots.push_back(i);
  return roots;
}

std::vector<std::vector<int>> conjugacy_classes(const MatrixGroup& group,
                                                const std::vector<int>& subset,
                                                double tol) {
  std::vector<std::vector<int>> classes;
  std::vector<char> placed(group.order(), 0);
  for (int j : subset) {
    if (placed[j]) continue;
    std::vector<int> cls;
    for (int gi = 0; gi < group.order(); ++gi) {
      const Mat& g = group.elements[gi];
      Mat conj = matmul(matmul(g, group.elements[j]),
                        group.elements[group.table.inverse[gi]]);
      int idx = group.index_of(conj, tol);
      if (idx < 0) continue;  // subset element conjugated out of the group
      bool in_subset = false;
      for (int s : subset) in_subset = in_subset || s == idx;
      if (!in_subset || placed[idx]) continue;
      placed[idx] = 1;
      cls.push_back(idx);
    }
    if (!cls.empty()) classes.push_back(std::move(cls));
  }
  return classes;
}

Mat l2_canonical_form(const Mat& A, double tol) {
  int n = A.n;
  if (n % 2 != 0)
    throw argument_error("l2_canonical_form: dimension must be even");
  {
    Mat ata = matmul(transpose(A), A);
    if (mat_max_abs(mat_add(ata, mat_scale(-1.0, Mat::identity(n)))) > tol)
      throw argument_error("l2_canonical_form: A is not orthogonal");
    if (residual_sq_minus_id(A) > tol)
      throw argument_error("l2_canonical_form: A^2 != -Id");
  }

  std::vector<Vec> basis;  // accumulated u_1, u_2, ...
  while (static_cast<int>(basis.size()) < n) {
    // pivot: standard basis vector with the largest residual after
    // projecting onto the accumulated invariant subspace
    Vec best_r;
    double best_len = -1.0;
    for (int i = 0; i < n; ++i) {
      Vec e(n, 0.0);
      e[i] = 1.0;
      Vec r = e - project_onto(basis, e);
      double len = norm2(r);
      if (len > best_len) {
        best_len = len;
        best_r = std::move(r);
      }
    }
    if (best_len < 1e-8)
      throw solver_error("l2_canonical_form: pivot residual degenerate");
    Vec u1 = best_r;
    kern::active_ops().scale(1.0 / best_len, u1.data(), u1.size());
    // the plane [u1, A u1] is invariant; A u1 is already orthogonal to u1
    Vec u2 = matvec(A, u1);
    // numerical cleanup against earlier pairs and u1
    u2 = u2 - project_onto(basis, u2);
    kern::active_ops().axpy(-dot(u1, u2), u1.data(), u2.data(), u2.size());
    double l2 = norm2(u2);
    if (l2 < 1e-8)
      throw solver_error("l2_canonical_form: invariant plane collapsed");
    kern::active_ops().scale(1.0 / l2, u2.data(), u2.size());
    basis.push_back(std::move(u1));
    basis.push_back(std::move(u2));
  }

  Mat U(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) U.at(i, j) = basis[j][i];

  // residual checks: A u_{2m-1} = u_{2m}, A u_{2m} = -u_{2m-1}
  for (int m = 0; m < n / 2; ++m) {
    Vec a1 = matvec(A, basis[2 * m]);
    Vec a2 = matvec(A, basis[2 * m + 1]);
    if (norm2(a1 - basis[2 * m + 1]) > tol ||
        norm2(a2 + basis[2 * m]) > tol) {
      std::ostringstream os;
      os << "l2_canonical_form: rotation-pair residual too large at pair " << m;
      throw solver_error(os.str());
    }
  }
  Mat utu = matmul(transpose(U), U);
  if (mat_max_abs(mat_add(utu, mat_scale(-1.0, Mat::identity(n)))) > tol)
    throw solver_error("l2_canonical_form: basis lost orthonormality");
  return U;
}

KaltonProjections kalton_projections(const Mat& A, const Mat& B, double tol) {
  if (A.n != B.n) throw argument_error("kalton_projections: dim mismatch");
  if (residual_sq_minus_id(A) > tol || residual_sq_minus_id(B) > tol)
    throw argument_error("kalton_projections: A^2 = B^2 = -Id required");
  Mat ab = matmul(A, B), ba = matmul(B, A);
  if (mat_max_abs(mat_add(ab, mat_scale(-1.0, ba))) > tol)
    throw argument_error("kalton_projections: A and B must commute");

  KaltonProjections out;
  Mat id = Mat::identity(A.n);
  out.P = mat_scale(0.5, mat_add(id, ab));
  out.Q = mat_scale(0.5, mat_add(id, mat_scale(-1.0, ab)));

  out.idempotent_residual =
      std::max(mat_max_abs(mat_add(matmul(out.P, out.P), mat_scale(-1.0, out.P))),
               mat_max_abs(mat_add(matmul(out.Q, out.Q), mat_scale(-1.0, out.Q))));
  double pa = mat_max_abs(
      mat_add(matmul(out.P, A), mat_scale(-1.0, matmul(A, out.P))));
  double pb = mat_max_abs(
      mat_add(matmul(out.P, B), mat_scale(-1.0, matmul(B, out.P))));
  out.commute_residual = std::max(pa, pb);
  // A = -B on range(P), A = B on range(Q)
  Mat apb = mat_add(A, B);                       // vanishes on range(P)
  Mat amb = mat_add(A, mat_scale(-1.0, B));      // vanishes on range(Q)
  out.sign_residual = std::max(mat_max_abs(matmul(apb, out.P)),
                               mat_max_abs(matmul(amb, out.Q)));
  return out;
}

Complexification complexify_norm(const Norm& base) {
  int n = base.dim();
  Complexification out;
  out.norm = Norm::block_l2(2 * n, {{0, base}, {n, base}});
  out.J = Mat(2 * n);
  out.conjugation = Mat(2 * n);
  for (int i = 0; i < n; ++i) {
    out.J.at(i, n + i) = -1.0;
    out.J.at(n + i, i) = 1.0;
    out.conjugation.at(i, i) = 1.0;
    out.conjugation.at(n + i, n + i) = -1.0;
  }
  return out;
}

}  // namespace renorm
