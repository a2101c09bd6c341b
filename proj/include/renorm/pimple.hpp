#pragma once

#include <memory>
#include <string>
#include <vector>

#include "renorm/config.hpp"
#include "renorm/matrix_group.hpp"
#include "renorm/norm.hpp"

namespace renorm {

// Pimple norm data: cones of slope lambda_k are grafted onto the base unit
// ball along the whole G-orbit of each point x_k. The unit ball becomes the
// convex hull of the base ball and the segments [-g x_k / lambda_k,
// g x_k / lambda_k].
struct PimpleSpec {
  Norm base;  // must be G-invariant
  std::shared_ptr<const MatrixGroup> group;  // must contain -Id
  std::vector<Vec> points;  // base-unit vectors x_k
  Vec lambdas;              // in (1/2, 1)
  Vec widths;               // b_k, upper bounds for the facet widths
  Vec deltas;               // delta_k, deviation locality radii
  Vec epsilons;             // eps_k = c_k / 2
};

struct PairWitness {
  int j = -1, g = -1, k = -1;
  double value = 0.0;
};

struct ValidationReport {
  bool passed = false;
  Vec c;           // separation constants c_k
  Vec min_lambda;  // smallest admissible lambda per point
  Vec lur_at_c;    // estimated lambda(x_k, c_k)
  PairWitness worst_pair;
  double base_invariance = 0.0;       // max relative |base(gx) - base(x)|
  double strict_convexity_max = 0.0;  // max midpoint norm over probed pairs
  std::vector<std::string> failures;
};

// Checks hypotheses (1)'/(2)' plus the structural requirements. Structural
// violations (missing -Id, base not invariant, non-unit points) throw
// spec_error; hypothesis failures are reported with witnesses.
ValidationReport validate_spec(const PimpleSpec& spec,
                               const Tolerances& tols = {},
                               const SolverConfig& cfg = {});

// Separation constants only (used by schedule_parameters before any lambda
// exists). Throws on structural violations.
Vec separation_constants(const Norm& base, const MatrixGroup& group,
                         const std::vector<Vec>& points);

struct PimpleEval {
  double value = 0.0;       // primal optimum
  double dual_lower = 0.0;  // certified lower bound
  double gap = 0.0;
  int iterations = 0;
};

// Certified gauge evaluation: proximal gradient on the decomposition
// objective, dual certificate by support-ratio maximization. Requires
// primal - dual <= 10*tol, else throws solver_error carrying both bounds.
PimpleEval eval_pimple(const PimpleSpec& spec, const Vec& y, double tol,
                       const SolverConfig& cfg = {});

// {g x_k / lambda_k} de-duplicated.
std::vector<Vec> tips(const PimpleSpec& spec, double dedup_tol = 1e-10);

// Norm object over a validated spec; eval uses the per-line route
// min_{k,g} min_t base(y - t g x_k) + lambda_k |t|.
Norm pimple_norm(PimpleSpec spec);

// non-null when the norm is a pimple-hull
const PimpleSpec* as_pimple(const Norm& n);

// min_t base(y - t d) + lambda * |t| for one cone line
double single_line_value(const Norm& base, const Vec& y, const Vec& d,
                         double lambda);

struct FacetMeasurement {
  double width = 0.0;  // base length of the maximal flat segment at the tip
  Vec endpoint;        // far end of the segment (a base-sphere point)
};

// Measures the maximal flat segment of the unit sphere emanating from the
// tip by maximizing the midpoint norm over sphere sections.
FacetMeasurement measure_facet(const Norm& pimple, const Norm& base,
                               const Vec& tip, int probes = 8,
                               uint64_t seed = 0xface7);

struct ConclusionReport {
  bool ok = true;
  Vec measured_widths;           // per point
  double sandwich_low = 1e300;   // min eval/base over samples
  double sandwich_high = 0.0;    // max eval/base over samples
  double worst_locality = 0.0;   // max (dist to orbit)/delta over deviating samples
  int deviating_samples = 0;
  std::vector<std::string> failures;
};

// A-posteriori checks of conclusions (3)', (4)', (6)' on the full norm.
ConclusionReport verify_conclusions(const PimpleSpec& spec, int samples,
                                    uint64_t seed,
                                    const SolverConfig& cfg = {},
                                    const Tolerances& tols = {});

// Emits the parameter schedule: eps_k = c_k/2, the delta chain
// delta_k <= min(delta_{k-1}, c_k/4, 1 - lambda(x_k, c_k)), lambdas increasing
// with geometrically decreasing cone heights sized so the measured deviation
// radius fits inside delta_k, and b_k just above the measured facet width.
// Throws solver_error naming the failing k when the chain is infeasible.
PimpleSpec schedule_parameters(const Norm& base,
                               std::shared_ptr<const MatrixGroup> group,
                               const std::vector<Vec>& points,
                               const SolverConfig& cfg = {},
                               const Tolerances& tols = {});

}  // namespace renorm
