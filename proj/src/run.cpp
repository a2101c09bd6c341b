#include "renorm/run.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "renorm/complex_structures.hpp"
#include "renorm/rng.hpp"

namespace renorm {

SolverConfig config_from_json(const json& overrides, uint64_t seed) {
  SolverConfig cfg;
  cfg.seed = seed;
  if (overrides.is_object()) {
    if (overrides.contains("tol")) cfg.tol = overrides["tol"].get<double>();
    if (overrides.contains("max_iterations"))
      cfg.max_iterations = overrides["max_iterations"].get<int>();
    if (overrides.contains("dual_starts"))
      cfg.dual_starts = overrides["dual_starts"].get<int>();
    if (overrides.contains("safety")) cfg.safety = overrides["safety"].get<double>();
    if (overrides.contains("min_lambda"))
      cfg.min_lambda = overrides["min_lambda"].get<double>();
    if (overrides.contains("delta0")) cfg.delta0 = overrides["delta0"].get<double>();
    if (overrides.contains("alpha_cap"))
      cfg.alpha_cap = overrides["alpha_cap"].get<double>();
    if (overrides.contains("lur_grid")) cfg.lur_grid = overrides["lur_grid"].get<int>();
    if (overrides.contains("threads")) cfg.threads = overrides["threads"].get<int>();
  }
  return cfg;
}

RepresentReport represent_pipeline(const MultTable& table, int dim,
                                   const SolverConfig& cfg, int falsify_starts,
                                   int falsify_steps) {
  RepresentReport rep;
  std::vector<int> invs = central_involutions(table);

  std::vector<Mat> matrices;
  if (!invs.empty() && dim * 2 == table.order) {
    // coset representation on R^{|G'|}
    CosetSplit split = coset_split(table, invs.front());
    matrices = classical_rep(split);
    rep.strategy = "classical";
    rep.target = table;
  } else if (dim >= table.order) {
    matrices = fini_rep(table, dim - table.order);
    rep.strategy = "fini";
    rep.target = fini_rep_table(table);
  } else {
    throw argument_error(
        "represent: dim must equal |G|/2 (central involution present) or be "
        ">= |G|");
  }

  Norm base = Norm::lp(4.0, dim);
  rep.acting = group_closure(matrices, static_cast<int>(matrices.size()) + 1);
  if (rep.acting.order() != static_cast<int>(matrices.size()))
    throw solver_error("represent: representation image is not closed");
  if (!rep.acting.has_minus_id)
    throw solver_error("represent: representation image lacks -Id");

  Vec x0(dim, 0.0);
  x0[0] = 1.0;
  rep.family = build_point_family(rep.acting, base, x0, cfg);

  auto shared = std::make_shared<MatrixGroup>(rep.acting);
  rep.spec = schedule_parameters(base, shared, rep.family.vectors(), cfg);
  rep.candidates = enumerate_tip_candidates(rep.spec, cfg);

  MatrixGroup cand_group =
      group_closure(rep.candidates, static_cast<int>(rep.candidates.size()) + 1);
  rep.candidates_closed =
      cand_group.order() == static_cast<int>(rep.candidates.size());
  rep.candidate_table = cand_group.table;
  rep.isomorphic_to_target =
      rep.candidates_closed && tables_isomorphic(rep.candidate_table, rep.target);

  if (falsify_starts > 0) {
    KnownSet known;
    known.elements = rep.candidates;
    rep.falsifier = falsify_search(pimple_norm(rep.spec), known, falsify_starts,
                                   falsify_steps, cfg);
    rep.falsifier_starts = falsify_starts;
  }
  return rep;
}

namespace {

json candidates_to_json(const std::vector<Mat>& mats) {
  json arr = json::array();
  for (const Mat& m : mats) arr.push_back(m.a);
  return arr;
}

json cmd_norm_eval(const RunManifest& m, const SolverConfig&) {
  Norm n = norm_from_json(m.inputs.at("norm"));
  Vec x = vec_from_json(m.inputs.at("x"));
  json rep;
  rep["value"] = n(x);
  return rep;
}

json cmd_norm_check(const RunManifest& m, const SolverConfig& cfg) {
  Norm n = norm_from_json(m.inputs.at("norm"));
  int samples = m.inputs.value("samples", 1000);
  AxiomReport ar = check_norm_axioms(n, samples, m.seed);
  json rep;
  rep["samples"] = samples;
  rep["homogeneity"] = ar.homogeneity;
  rep["triangle"] = ar.triangle;
  rep["symmetry"] = ar.symmetry;
  rep["definiteness_min"] = ar.definiteness_min;
  rep["zero_at_origin"] = ar.zero_at_origin;
  rep["pass"] = ar.pass(1e-10);
  return rep;
}

json cmd_pimple_build(const RunManifest& m, const SolverConfig& cfg) {
  Norm base = norm_from_json(m.inputs.at("base"));
  auto group = group_from_json(m.inputs.at("group"));
  std::vector<Vec> points;
  for (const auto& e : m.inputs.at("points")) points.push_back(vec_from_json(e));
  PimpleSpec spec = schedule_parameters(base, group, points, cfg);
  ValidationReport vr = validate_spec(spec, {}, cfg);
  json rep;
  rep["spec"] = pimple_spec_to_json(spec);
  rep["c"] = vr.c;
  rep["passed"] = vr.passed;
  return rep;
}

json cmd_pimple_eval(const RunManifest& m, const SolverConfig& cfg) {
  PimpleSpec spec = pimple_spec_from_json(m.inputs.at("spec"));
  Vec x = vec_from_json(m.inputs.at("x"));
  double tol = m.inputs.value("tol", cfg.tol);
  PimpleEval ev = eval_pimple(spec, x, tol, cfg);
  json rep;
  rep["value"] = ev.value;
  rep["dual_lower"] = ev.dual_lower;
  rep["gap"] = ev.gap;
  rep["iterations"] = ev.iterations;
  return rep;
}

json cmd_pimple_check(const RunManifest& m, const SolverConfig& cfg) {
  PimpleSpec spec = pimple_spec_from_json(m.inputs.at("spec"));
  ValidationReport vr = validate_spec(spec, {}, cfg);
  json rep;
  rep["passed"] = vr.passed;
  rep["c"] = vr.c;
  rep["min_lambda"] = vr.min_lambda;
  rep["lur_at_c"] = vr.lur_at_c;
  rep["strict_convexity_max"] = vr.strict_convexity_max;
  rep["failures"] = vr.failures;
  if (vr.passed) {
    int samples = m.inputs.value("samples", 500);
    ConclusionReport cr = verify_conclusions(spec, samples, m.seed, cfg);
    json c;
    c["ok"] = cr.ok;
    c["measured_widths"] = cr.measured_widths;
    c["sandwich_low"] = cr.sandwich_low;
    c["sandwich_high"] = cr.sandwich_high;
    c["worst_locality"] = cr.worst_locality;
    c["deviating_samples"] = cr.deviating_samples;
    c["failures"] = cr.failures;
    rep["conclusions"] = std::move(c);
  }
  return rep;
}

json cmd_orbit_build(const RunManifest& m, const SolverConfig& cfg) {
  Norm base = norm_from_json(m.inputs.at("base"));
  auto group = group_from_json(m.inputs.at("group"));
  Vec x0 = vec_from_json(m.inputs.at("x0"));
  PointFamily fam = build_point_family(*group, base, x0, cfg);
  json rep;
  rep["family"] = family_to_json(fam);
  return rep;
}

json cmd_isometries_enumerate(const RunManifest& m, const SolverConfig& cfg) {
  PimpleSpec spec = pimple_spec_from_json(m.inputs.at("spec"));
  std::vector<Mat> cands = enumerate_tip_candidates(spec, cfg);
  MatrixGroup grp =
      group_closure(cands, static_cast<int>(cands.size()) + 1);
  json rep;
  rep["order"] = static_cast<int>(cands.size());
  rep["closed"] = grp.order() == static_cast<int>(cands.size());
  rep["candidates"] = candidates_to_json(cands);
  rep["table"] = table_to_json(grp.table);
  if (m.inputs.contains("target")) {
    MultTable target = table_from_json(m.inputs.at("target"));
    rep["isomorphic_to_target"] = tables_isomorphic(grp.table, target);
  }
  return rep;
}

json cmd_isometries_falsify(const RunManifest& m, const SolverConfig& cfg) {
  Norm n = norm_from_json(m.inputs.at("norm"));
  KnownSet known;
  if (m.inputs.contains("known_group")) {
    auto g = group_from_json(m.inputs.at("known_group"));
    known.elements = g->elements;
  }
  if (m.inputs.contains("known_elements"))
    for (const auto& e : m.inputs.at("known_elements"))
      known.elements.push_back(mat_from_json(e));
  if (m.inputs.contains("circles"))
    for (const auto& e : m.inputs.at("circles"))
      known.circles.push_back(mat_from_json(e));
  int starts = m.inputs.value("starts", 200);
  int steps = m.inputs.value("steps", 60);
  FalsifierResult fr = falsify_search(n, known, starts, steps, cfg);
  json rep;
  rep["starts"] = starts;
  rep["steps"] = steps;
  rep["best_residual"] = fr.best_residual;
  rep["best_distance"] = fr.best_distance;
  rep["intruders_found"] = fr.intruders_found;
  return rep;
}

json cmd_represent(const RunManifest& m, const SolverConfig& cfg) {
  MultTable table = table_from_json(m.inputs.at("group"));
  int dim = m.inputs.at("dim").get<int>();
  int starts = m.inputs.value("falsify_starts", 200);
  int steps = m.inputs.value("falsify_steps", 60);
  RepresentReport rr = represent_pipeline(table, dim, cfg, starts, steps);
  json rep;
  rep["strategy"] = rr.strategy;
  rep["target_order"] = rr.target.order;
  rep["acting_order"] = rr.acting.order();
  rep["family"] = family_to_json(rr.family);
  rep["spec"] = pimple_spec_to_json(rr.spec);
  rep["isometry_group_order"] = static_cast<int>(rr.candidates.size());
  rep["candidates_closed"] = rr.candidates_closed;
  rep["isomorphic_to_target"] = rr.isomorphic_to_target;
  rep["candidates"] = candidates_to_json(rr.candidates);
  rep["table"] = table_to_json(rr.candidate_table);
  if (rr.falsifier_starts > 0) {
    rep["falsifier_residual"] = rr.falsifier.best_residual;
    rep["falsifier_starts"] = rr.falsifier_starts;
  }
  return rep;
}

json cmd_complex_structures(const RunManifest& m, const SolverConfig& cfg) {
  json rep;
  std::shared_ptr<const MatrixGroup> group;
  if (m.inputs.contains("group")) {
    group = group_from_json(m.inputs.at("group"));
  } else if (m.inputs.contains("complexify")) {
    // build the complexified norm and classify {J, c} structures
    Norm base = norm_from_json(m.inputs.at("complexify"));
    Complexification cx = complexify_norm(base);
    group = make_shared_group({cx.J, cx.conjugation}, 64);
    rep["complexified_dim"] = cx.norm.dim();
    IsometryCheck cj = verify_isometry(cx.J, cx.norm, 200, 1e-9, m.seed);
    IsometryCheck cc = verify_isometry(cx.conjugation, cx.norm, 200, 1e-9, m.seed);
    rep["J_is_isometry"] = cj.ok;
    rep["conjugation_is_isometry"] = cc.ok;
  } else {
    throw spec_error("complex-structures: need group or complexify input");
  }
  std::vector<int> roots = find_square_roots_of_minus_id(*group);
  auto classes = conjugacy_classes(*group, roots);
  rep["group_order"] = group->order();
  rep["roots"] = json::array();
  for (int r : roots) rep["roots"].push_back(group->elements[r].a);
  rep["root_count"] = static_cast<int>(roots.size());
  json cl = json::array();
  for (const auto& c : classes) cl.push_back(c);
  rep["classes"] = std::move(cl);
  rep["class_count"] = static_cast<int>(classes.size());
  return rep;
}

json cmd_jarosz_c2(const RunManifest& m, const SolverConfig& cfg) {
  C2NormSpec spec = C2NormSpec::defaults();
  if (m.inputs.contains("lambdas")) {
    const auto& arr = m.inputs.at("lambdas");
    for (int k = 0; k < 4; ++k)
      spec.lambdas[k] = {arr[k][0].get<double>(), arr[k][1].get<double>()};
  }
  Norm n = c2_norm_build(spec);
  json rep;
  rep["norm"] = norm_to_json(n);
  if (m.inputs.contains("x")) rep["value"] = n(vec_from_json(m.inputs.at("x")));
  // the paper identities at a few sampled angles
  json probes = json::array();
  for (int i = 0; i < 8; ++i) {
    double th = 2.0 * M_PI * i / 8.0;
    Vec e_theta = {std::cos(th), std::sin(th), 0.0, 0.0};
    probes.push_back(n(e_theta));
  }
  rep["unit_circle_values"] = std::move(probes);
  return rep;
}

json cmd_jarosz_double(const RunManifest& m, const SolverConfig& cfg) {
  int gammas = m.inputs.value("gamma_count", 2);
  int variant = m.inputs.value("variant", 2);
  Norm n = double_norm_build(gammas, variant);
  json rep;
  rep["norm"] = norm_to_json(n);
  if (m.inputs.contains("x")) rep["value"] = n(vec_from_json(m.inputs.at("x")));
  return rep;
}

json cmd_jarosz_extend(const RunManifest& m, const SolverConfig& cfg) {
  Norm inner = norm_from_json(m.inputs.at("inner"));
  Norm secondary = norm_from_json(m.inputs.at("secondary"));
  Vec x0 = vec_from_json(m.inputs.at("x0"));
  Mat J = m.inputs.contains("J") ? mat_from_json(m.inputs.at("J"))
                                 : standard_complex_structure(inner.dim() / 2);
  ExtensionWSpec spec = make_extension_spec(inner, secondary, x0, J, m.seed);
  Norm w = extension_norm_w(spec, m.inputs.value("tol", 1e-8));
  json rep;
  rep["norm"] = norm_to_json(w);
  if (m.inputs.contains("x")) rep["value"] = w(vec_from_json(m.inputs.at("x")));
  // the coincidence identity on X embedded at alpha = 0
  Rng rng(m.seed);
  double worst = 0.0;
  for (int s = 0; s < 8; ++s) {
    Vec x = rng.gaussian_vec(inner.dim());
    double in = inner(x);
    if (in < 1e-9) continue;
    Vec q(inner.dim() + 2, 0.0);
    for (int i = 0; i < inner.dim(); ++i) q[i] = x[i];
    q[inner.dim()] = 0.3 * in;  // |alpha| <= ||x||
    worst = std::max(worst, std::fabs(w(q) - in) / in);
  }
  rep["coincidence_residual"] = worst;
  return rep;
}

json cmd_render(const RunManifest& m, const SolverConfig& cfg) {
  Norm n = norm_from_json(m.inputs.at("norm"));
  int resolution = m.inputs.value("resolution", 360);
  RenderResult rr = render_ball_2d(n, resolution);
  json rep;
  rep["resolution"] = resolution;
  double mx = 0.0;
  for (double r : rr.radii) mx = std::max(mx, r);
  rep["max_radius"] = mx;
  rep["tip_count"] = static_cast<int>(rr.tips.size());
  if (!m.inputs.value("skip_files", false)) {
    rep["svg"] = "ball.svg";
    rep["csv"] = "ball.csv";
  }
  return rep;
}

}  // namespace

json run_command(const RunManifest& manifest) {
  SolverConfig cfg = config_from_json(manifest.config, manifest.seed);
  json report;
  report["command"] = manifest.command;
  report["seed"] = manifest.seed;

  json body;
  if (manifest.command == "norm-eval")
    body = cmd_norm_eval(manifest, cfg);
  else if (manifest.command == "norm-check")
    body = cmd_norm_check(manifest, cfg);
  else if (manifest.command == "pimple-build")
    body = cmd_pimple_build(manifest, cfg);
  else if (manifest.command == "pimple-eval")
    body = cmd_pimple_eval(manifest, cfg);
  else if (manifest.command == "pimple-check")
    body = cmd_pimple_check(manifest, cfg);
  else if (manifest.command == "orbit-build")
    body = cmd_orbit_build(manifest, cfg);
  else if (manifest.command == "isometries-enumerate")
    body = cmd_isometries_enumerate(manifest, cfg);
  else if (manifest.command == "isometries-falsify")
    body = cmd_isometries_falsify(manifest, cfg);
  else if (manifest.command == "represent")
    body = cmd_represent(manifest, cfg);
  else if (manifest.command == "complex-structures")
    body = cmd_complex_structures(manifest, cfg);
  else if (manifest.command == "jarosz-c2")
    body = cmd_jarosz_c2(manifest, cfg);
  else if (manifest.command == "jarosz-double")
    body = cmd_jarosz_double(manifest, cfg);
  else if (manifest.command == "jarosz-extend")
    body = cmd_jarosz_extend(manifest, cfg);
  else if (manifest.command == "render")
    body = cmd_render(manifest, cfg);
  else
    throw spec_error("unknown command: " + manifest.command);

  report["report"] = std::move(body);

  if (!manifest.output_dir.empty()) {
    std::filesystem::create_directories(manifest.output_dir);
    write_file(manifest.output_dir + "/report.json", dump_report(report));
    if (manifest.command == "render" &&
        !manifest.inputs.value("skip_files", false)) {
      Norm n = norm_from_json(manifest.inputs.at("norm"));
      RenderResult rr =
          render_ball_2d(n, manifest.inputs.value("resolution", 360));
      write_file(manifest.output_dir + "/ball.svg", rr.svg);
      write_file(manifest.output_dir + "/ball.csv", rr.csv);
    }
  }
  return report;
}

}  // namespace renorm
