#pragma once

#include <vector>

#include "renorm/matrix_group.hpp"
#include "renorm/norm.hpp"

namespace renorm {

// Elements J of the group with J^2 = -Id within tol.
std::vector<int> find_square_roots_of_minus_id(const MatrixGroup& group,
                                               double tol = 1e-9);

// Orbits of the subset under g J g^-1 over the whole group.
std::vector<std::vector<int>> conjugacy_classes(const MatrixGroup& group,
                                                const std::vector<int>& subset,
                                                double tol = 1e-9);

// Orthonormal basis (u_1, ..., u_n), pair-ordered, with A u_{2m-1} = u_{2m}
// and A u_{2m} = -u_{2m-1}. Requires A orthogonal with A^2 = -Id, even dim.
Mat l2_canonical_form(const Mat& A, double tol = 1e-9);

struct KaltonProjections {
  Mat P, Q;
  double idempotent_residual = 0.0;
  double commute_residual = 0.0;
  double sign_residual = 0.0;  // A = -B on range P, A = B on range Q
};

// P = (Id + AB)/2, Q = (Id - AB)/2 with the identity checks.
KaltonProjections kalton_projections(const Mat& A, const Mat& B,
                                     double tol = 1e-9);

struct Complexification {
  Norm norm;  // on R^{2n}: sqrt(base(y)^2 + base(z)^2)
  Mat J;      // (y, z) -> (-z, y)
  Mat conjugation;  // (y, z) -> (y, -z)
};

Complexification complexify_norm(const Norm& base);

}  // namespace renorm
