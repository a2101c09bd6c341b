#pragma once

#include <string>
#include <vector>

#include "renorm/linalg.hpp"

namespace renorm {

// Abstract finite group as a multiplication table over element indices.
struct MultTable {
  int order = 0;
  std::vector<int> table;  // row-major: table[i*order + j] = index of g_i * g_j
  int identity = 0;
  std::vector<int> inverse;

  int at(int i, int j) const { return table[static_cast<size_t>(i) * order + j]; }

  // Checks group axioms exactly; throws spec_error on violation.
  void validate() const;
};

// Builds identity/inverse data and validates.
MultTable make_table(int order, std::vector<int> entries);

// Presets: "cyclic<n>", "klein4", "dihedral<n>" (order 2n), "quaternion8",
// "z2xz4". Throws argument_error for unknown names.
MultTable preset_table(const std::string& name);

MultTable direct_product(const MultTable& a, const MultTable& b);

std::vector<int> element_orders(const MultTable& t);

// Brute-force table isomorphism with element-order-profile pruning.
// Different orders compare as false (not an error). Sizes must be <= 64.
bool tables_isomorphic(const MultTable& a, const MultTable& b);

}  // namespace renorm
