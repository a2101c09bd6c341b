#pragma once

#include <string>
#include <vector>

#include "renorm/group_table.hpp"
#include "renorm/linalg.hpp"

namespace renorm {

// Indices of the central involutions (g != 1, g^2 = 1, g central).
std::vector<int> central_involutions(const MultTable& table);

// Split G = G' U jG' for a central involution j, with the sign map and the
// projection onto representatives.
struct CosetSplit {
  const MultTable* table = nullptr;
  int j = -1;
  std::vector<int> reps;      // G', contains the identity
  std::vector<int> sign;      // eps_g in {+1, -1} per group element
  std::vector<int> rep_of;    // |g|: index into the group of the representative
  std::vector<int> rep_slot;  // position of |g| inside reps (-1 off G')
};

CosetSplit coset_split(const MultTable& table, int j);

// Signed-permutation matrices T_g on R^{|G'|}:
//   (T_g y)_h = eps_{g^-1 h} y_{|g^-1 h|},  h in G'.
// Exact integer entries; T_j = -Id.
std::vector<Mat> classical_rep(const CosetSplit& split);

// {-1,1} x G acting on R^{|G|+m}: signed permutation e_h -> eps e_{gh} on the
// group block, eps * Id on the extra block. Returned in the element order
// (eps, g) = (+1, g_0..), then (-1, g_0..).
std::vector<Mat> fini_rep(const MultTable& table, int extra_dim);

// Table of {-1,1} x G in the same element order as fini_rep.
MultTable fini_rep_table(const MultTable& table);

}  // namespace renorm
