#pragma once

#include <memory>
#include <string>
#include <vector>

#include "renorm/config.hpp"
#include "renorm/matrix_group.hpp"
#include "renorm/norm.hpp"

namespace renorm {

struct construction_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Provenance-carrying point family produced by the constructive argument:
// x_0, type-1 points x = a x_0 + z with z at prescribed distance from the
// accumulated span, and type-2 points x = a x_0 + beta g x_0 with beta chosen
// by nested trisection.
struct FamilyPoint {
  Vec x;
  double a = 0.0;           // coefficient of x_0
  int type = 0;             // 0: x_0 itself, 1: type-1, 2: type-2
  int source_basis = -1;    // type-1: index of the spanning vector y_k used
  int source_g = -1;        // type-2: group element index
  double beta = 0.0;        // type-2: chosen coefficient
  double interval_lo = 0.0, interval_hi = 0.0;  // type-2: kept interval
};

struct PointFamily {
  double alpha = 0.0;
  std::vector<FamilyPoint> points;
  bool spans = false;

  std::vector<Vec> vectors() const {
    std::vector<Vec> v;
    v.reserve(points.size());
    for (const auto& p : points) v.push_back(p.x);
    return v;
  }
};

// alpha = min(alpha_cap, min_{g != Id} base(x0 - g x0)); throws
// construction_error when some g != Id fixes x0.
double separation_constant(const MatrixGroup& group, const Norm& base,
                           const Vec& x0, double alpha_cap = 0.99);

struct TrisectChoice {
  double beta = 0.0;
  double lo = 0.0, hi = 0.0;  // kept interval
};

// Nested-interval selection of the beta_n for the given group elements.
// Intervals start at [alpha/10, alpha/5]; each step keeps the first or last
// third so everything in it stays at distance >= alpha^2/(40*3^n) from the
// previously fixed point.
std::vector<TrisectChoice> trisect_select(const MatrixGroup& group,
                                          const Norm& base, const Vec& x0,
                                          const std::vector<int>& g_sequence,
                                          double alpha);

// Full construction: type-2 points for every g outside {+-Id}, then type-1
// points from greedily chosen basis vectors until the orbit of the family
// spans R^n. Asserts the separation floor alpha^2/(40*3^{k+1}).
PointFamily build_point_family(const MatrixGroup& group, const Norm& base,
                               const Vec& x0, const SolverConfig& cfg = {},
                               const Tolerances& tols = {});

// Distance from z to span(basis) in the base norm, by convex minimization
// over the coefficients.
double base_dist_to_span(const Norm& base, const std::vector<Vec>& basis,
                         const Vec& z);

}  // namespace renorm
