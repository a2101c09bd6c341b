#pragma once

#include <optional>
#include <string>
#include <vector>

#include "renorm/config.hpp"
#include "renorm/matrix_group.hpp"
#include "renorm/norm.hpp"
#include "renorm/pimple.hpp"

namespace renorm {

struct IsometryCheck {
  bool ok = false;
  double worst = 0.0;  // max relative |eval(Tx) - eval(x)|
  Vec witness;
};

// Direct definition check on seed-fixed sphere samples plus the norm's
// structured points (tips). Throws argument_error for non-invertible T.
IsometryCheck verify_isometry(const Mat& T, const Norm& norm, int samples,
                              double tol, uint64_t seed = 0x15a);

// Candidate isometries of a pimple norm from tip invariants: tips are grouped
// into classes by (lambda_k, measured facet width); class-preserving
// assignments on a spanning subset determine linear maps, kept when
// consistent on the whole tip set and verified as isometries. In dimension 2
// with collinear tips the facet endpoints join the invariant point set.
std::vector<Mat> enumerate_tip_candidates(const PimpleSpec& spec,
                                          const SolverConfig& cfg = {},
                                          const Tolerances& tols = {});

// Known isometries: finite elements plus optional one-parameter rotation
// circles cos(t) Id + sin(t) J.
struct KnownSet {
  std::vector<Mat> elements;
  std::vector<Mat> circles;  // the J of each circle

  double distance(const Mat& T) const;
};

struct FalsifierResult {
  double best_residual = 1e300;  // smallest discrepancy beyond the exclusion radius
  double best_distance = 0.0;    // distance of that map to the known set
  Mat best_map;
  int intruders_found = 0;       // maps with residual < accept threshold
};

// Multistart local minimization of the sampled sphere discrepancy
// mean (eval(Tx) - eval(x))^2, repelled from the known set; reports the
// smallest discrepancy attained farther than 1e-3 from every known map.
// A large report (> 1e-4) corroborates the exactness claim. Report-only.
FalsifierResult falsify_search(const Norm& norm, const KnownSet& known,
                               int starts, int steps,
                               const SolverConfig& cfg = {});

// Abstract-group comparison of closed matrix groups per their tables.
bool groups_isomorphic(const MultTable& a, const MultTable& b);

struct IsometryGroupReport {
  std::vector<Mat> verified;
  MultTable table;
  bool closed = false;
  std::string target_name;
  bool matches_target = false;
  double falsifier_residual = 1e300;
  int falsifier_starts = 0;
};

}  // namespace renorm
