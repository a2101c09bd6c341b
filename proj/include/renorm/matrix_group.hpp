#pragma once

#include <memory>
#include <vector>

#include "renorm/group_table.hpp"
#include "renorm/linalg.hpp"

namespace renorm {

// Closed finite set of invertible matrices with its multiplication table.
struct MatrixGroup {
  std::vector<Mat> elements;
  MultTable table;
  bool has_minus_id = false;
  int minus_id_index = -1;

  int order() const { return static_cast<int>(elements.size()); }
  int dim() const { return elements.empty() ? 0 : elements[0].n; }
  const Mat& identity() const { return elements[table.identity]; }

  // index of the closest element within tol, -1 if none
  int index_of(const Mat& m, double tol) const;
};

// Dimino-style closure with de-duplication at dedup_tol. Throws solver_error
// when the closure exceeds cap (likely-infinite group), argument_error for
// non-invertible generators.
MatrixGroup group_closure(const std::vector<Mat>& generators, int cap,
                          double dedup_tol = 1e-9);

std::shared_ptr<const MatrixGroup> make_shared_group(
    const std::vector<Mat>& generators, int cap, double dedup_tol = 1e-9);

Mat rotation2(double angle);

}  // namespace renorm
