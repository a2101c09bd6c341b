#pragma once

#include <cstdint>

namespace renorm {

// Central tolerance record. Every numeric threshold the modules use is pinned
// here so runs are reproducible from one config.
struct Tolerances {
  double eval_tol = 1e-10;        // norm evaluation agreement
  double axiom_tol = 1e-10;       // homogeneity / triangle probes
  double dedup_tol = 1e-9;        // group element and tip de-duplication
  double invert_rcond = 1e-10;    // reciprocal condition number floor
  double tip_match = 1e-7;        // candidate consistency on tips
  double width_probe = 1e-9;      // sphere-flatness threshold for facet search
  double span_rank = 1e-8;        // rank tests for spans
};

struct SolverConfig {
  double tol = 1e-8;              // pimple gauge tolerance (gap <= 10*tol)
  int max_iterations = 20000;     // proximal gradient budget
  int dual_starts = 64;           // support-ratio maximization restarts
  double safety = 0.9;            // schedule margins multiplier
  double min_lambda = 0.5;        // the m of the schedule, lambda_k > max(1/2, m)
  double delta0 = 1.0;            // initial cap for the delta chain
  double alpha_cap = 0.99;        // separation constant cap (< 1)
  double day_weight_base = 0.25;  // weights 1/4^i
  int lur_grid = 256;             // direction grid for the LUR modulus search
  int threads = 0;                // 0 = hardware concurrency
  uint64_t seed = 0x5eed0001;
};

}  // namespace renorm
