#pragma once

#include <string>

#include "renorm/group_rep.hpp"
#include "renorm/io.hpp"
#include "renorm/isometry.hpp"

namespace renorm {

// Deterministic run description: same manifest, byte-identical reports.
struct RunManifest {
  std::string command;
  json inputs;       // command-specific payload, file references resolved
  uint64_t seed = 0x5eed0001;
  json config;       // partial SolverConfig overrides
  std::string output_dir;  // empty = no files, report returned only
};

SolverConfig config_from_json(const json& overrides, uint64_t seed);

// Executes the command and returns the full report (also written to
// output_dir/report.json when output_dir is set, along with any side files).
json run_command(const RunManifest& manifest);

// Theorem-pipeline: represent the abstract group as the isometry group of a
// pimpled norm on R^dim. Uses the coset representation when dim == |G'|,
// otherwise the {-1,1} x G representation when dim >= |G|.
struct RepresentReport {
  std::string strategy;  // "classical" or "fini"
  MultTable target;      // abstract group that should equal the isometry group
  MatrixGroup acting;
  PointFamily family;
  PimpleSpec spec;
  std::vector<Mat> candidates;
  MultTable candidate_table;
  bool candidates_closed = false;
  bool isomorphic_to_target = false;
  FalsifierResult falsifier;
  int falsifier_starts = 0;
};

RepresentReport represent_pipeline(const MultTable& table, int dim,
                                   const SolverConfig& cfg,
                                   int falsify_starts = 200,
                                   int falsify_steps = 60);

}  // namespace renorm
