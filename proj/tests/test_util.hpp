#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "renorm/norm.hpp"
#include "renorm/rng.hpp"

namespace testutil {

using renorm::Norm;
using renorm::Vec;

// Independent oracle for Day's norm: supremum over all ordered tuples of
// distinct indices of sqrt(sum x_{n_i}^2 / 4^i). Exponential; dims <= 7.
inline double day_brute_force(const Vec& x, double base = 0.25) {
  int n = static_cast<int>(x.size());
  double best_sq = 0.0;
  std::vector<char> used(n, 0);
  std::function<void(int, double, double)> rec = [&](int depth, double w,
                                                     double acc) {
    if (acc > best_sq) best_sq = acc;
    if (depth == n) return;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      used[i] = 1;
      rec(depth + 1, w * base, acc + w * base * x[i] * x[i]);
      used[i] = 0;
    }
  };
  rec(0, 1.0, 0.0);
  return std::sqrt(best_sq);
}

// Membership in conv(base unit ball, {tips}) via per-cone convex
// feasibility: y is in the cone over tip p iff
// min_{theta in [0,1]} base(y - theta p) - (1 - theta) <= 0.
// For validated pimple specs the union of cones equals the hull.
inline bool hull_member(const Norm& base, const std::vector<Vec>& tips,
                        const Vec& y, double slack = 1e-11) {
  if (base(y) <= 1.0 + slack) return true;
  const double golden = 0.6180339887498949;
  for (const Vec& p : tips) {
    auto f = [&](double th) { return base(y - th * p) - (1.0 - th); };
    double a = 0.0, b = 1.0;
    double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80; ++it) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - golden * (b - a);
        f1 = f(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + golden * (b - a);
        f2 = f(x2);
      }
    }
    if (std::min(f1, f2) <= slack) return true;
  }
  return false;
}

inline double hull_gauge(const Norm& base, const std::vector<Vec>& tips,
                         const Vec& y, double tol = 1e-10) {
  return renorm::gauge_from_membership(
      [&](const Vec& q) { return hull_member(base, tips, q); }, y, tol);
}

}  // namespace testutil
