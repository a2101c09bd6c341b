#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "renorm/run.hpp"

namespace {

using renorm::json;

json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw renorm::argument_error("cannot open file: " + path);
  json j;
  f >> j;
  return j;
}

json parse_vector_arg(const std::string& arg) {
  json arr = json::array();
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) arr.push_back(std::stod(item));
  return arr;
}

int execute(renorm::RunManifest& manifest, bool quiet) {
  json report = renorm::run_command(manifest);
  if (!quiet) std::cout << renorm::dump_report(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"renorm: equivalent norms with prescribed finite isometry "
               "groups, and complex structures up to isometric conjugacy"};
  app.require_subcommand(1);

  std::string output_dir;
  uint64_t seed = 0x5eed0001;
  bool quiet = false;
  int threads = 0;
  app.add_option("--out", output_dir, "directory for report files");
  app.add_option("--seed", seed, "master seed (all randomness flows from it)");
  app.add_option("--threads", threads, "worker thread bound (0 = hardware)");
  app.add_flag("--quiet", quiet, "suppress stdout report");

  renorm::RunManifest manifest;

  // norm eval|check
  auto* norm_cmd = app.add_subcommand("norm", "evaluate or probe a norm");
  norm_cmd->require_subcommand(1);
  std::string norm_file, x_arg;
  int samples = 1000;
  auto* norm_eval = norm_cmd->add_subcommand("eval", "evaluate a norm at x");
  norm_eval->add_option("--file", norm_file, "norm descriptor JSON")->required();
  norm_eval->add_option("--x", x_arg, "comma-separated coordinates")->required();
  norm_eval->callback([&] {
    manifest.command = "norm-eval";
    manifest.inputs["norm"] = load_json_file(norm_file);
    manifest.inputs["x"] = parse_vector_arg(x_arg);
  });
  auto* norm_check = norm_cmd->add_subcommand("check", "axiom probe report");
  norm_check->add_option("--file", norm_file, "norm descriptor JSON")->required();
  norm_check->add_option("--samples", samples, "probe count");
  norm_check->callback([&] {
    manifest.command = "norm-check";
    manifest.inputs["norm"] = load_json_file(norm_file);
    manifest.inputs["samples"] = samples;
  });

  // pimple build|eval|check
  auto* pimple_cmd = app.add_subcommand("pimple", "pimple norm operations");
  pimple_cmd->require_subcommand(1);
  std::string base_file, group_file, points_file, spec_file;
  double tol = 1e-8;
  auto* pimple_build = pimple_cmd->add_subcommand(
      "build", "schedule parameters for base, group and points");
  pimple_build->add_option("--base", base_file)->required();
  pimple_build->add_option("--group", group_file)->required();
  pimple_build->add_option("--points", points_file, "JSON array of vectors")
      ->required();
  pimple_build->callback([&] {
    manifest.command = "pimple-build";
    manifest.inputs["base"] = load_json_file(base_file);
    manifest.inputs["group"] = load_json_file(group_file);
    manifest.inputs["points"] = load_json_file(points_file);
  });
  auto* pimple_eval =
      pimple_cmd->add_subcommand("eval", "certified gauge evaluation");
  pimple_eval->add_option("--spec", spec_file, "PimpleSpec JSON")->required();
  pimple_eval->add_option("--x", x_arg)->required();
  pimple_eval->add_option("--tol", tol);
  pimple_eval->callback([&] {
    manifest.command = "pimple-eval";
    manifest.inputs["spec"] = load_json_file(spec_file);
    manifest.inputs["x"] = parse_vector_arg(x_arg);
    manifest.inputs["tol"] = tol;
  });
  auto* pimple_check =
      pimple_cmd->add_subcommand("check", "validate hypotheses and conclusions");
  pimple_check->add_option("--spec", spec_file)->required();
  pimple_check->add_option("--samples", samples);
  pimple_check->callback([&] {
    manifest.command = "pimple-check";
    manifest.inputs["spec"] = load_json_file(spec_file);
    manifest.inputs["samples"] = samples;
  });

  // orbit build
  auto* orbit_cmd = app.add_subcommand("orbit", "point family construction");
  orbit_cmd->require_subcommand(1);
  auto* orbit_build = orbit_cmd->add_subcommand("build", "build the family");
  orbit_build->add_option("--base", base_file)->required();
  orbit_build->add_option("--group", group_file)->required();
  orbit_build->add_option("--x0", x_arg)->required();
  orbit_build->callback([&] {
    manifest.command = "orbit-build";
    manifest.inputs["base"] = load_json_file(base_file);
    manifest.inputs["group"] = load_json_file(group_file);
    manifest.inputs["x0"] = parse_vector_arg(x_arg);
  });

  // isometries enumerate|falsify
  auto* iso_cmd = app.add_subcommand("isometries", "isometry group tooling");
  iso_cmd->require_subcommand(1);
  int starts = 200, steps = 60;
  std::string target_file;
  auto* iso_enum =
      iso_cmd->add_subcommand("enumerate", "tip-invariant candidates");
  iso_enum->add_option("--spec", spec_file)->required();
  iso_enum->add_option("--target", target_file, "abstract table JSON");
  iso_enum->callback([&] {
    manifest.command = "isometries-enumerate";
    manifest.inputs["spec"] = load_json_file(spec_file);
    if (!target_file.empty())
      manifest.inputs["target"] = load_json_file(target_file);
  });
  auto* iso_falsify = iso_cmd->add_subcommand("falsify", "intruder search");
  iso_falsify->add_option("--norm", norm_file)->required();
  iso_falsify->add_option("--known", group_file, "known matrix group JSON");
  iso_falsify->add_option("--starts", starts);
  iso_falsify->add_option("--steps", steps);
  iso_falsify->callback([&] {
    manifest.command = "isometries-falsify";
    manifest.inputs["norm"] = load_json_file(norm_file);
    if (!group_file.empty())
      manifest.inputs["known_group"] = load_json_file(group_file);
    manifest.inputs["starts"] = starts;
    manifest.inputs["steps"] = steps;
  });

  // represent <group> --dim n
  std::string group_name;
  int dim = 2;
  auto* represent =
      app.add_subcommand("represent", "full renorming pipeline for a group");
  represent->add_option("group", group_name,
                        "preset (cyclic4, quaternion8, ...) or table file")
      ->required();
  represent->add_option("--dim", dim, "ambient dimension")->required();
  represent->add_option("--falsify-starts", starts);
  represent->add_option("--falsify-steps", steps);
  represent->callback([&] {
    manifest.command = "represent";
    if (group_name.size() > 5 &&
        group_name.substr(group_name.size() - 5) == ".json")
      manifest.inputs["group"] = load_json_file(group_name);
    else
      manifest.inputs["group"] = json{{"preset", group_name}};
    manifest.inputs["dim"] = dim;
    manifest.inputs["falsify_starts"] = starts;
    manifest.inputs["falsify_steps"] = steps;
  });

  // complex-structures
  std::string complexify_file;
  auto* cs = app.add_subcommand("complex-structures",
                                "square roots of -Id and conjugacy classes");
  cs->add_option("--group", group_file, "matrix group JSON");
  cs->add_option("--complexify", complexify_file,
                 "base norm JSON; classify the complexified square");
  cs->callback([&] {
    manifest.command = "complex-structures";
    if (!group_file.empty())
      manifest.inputs["group"] = load_json_file(group_file);
    if (!complexify_file.empty())
      manifest.inputs["complexify"] = load_json_file(complexify_file);
  });

  // jarosz c2|double|extend
  auto* jz = app.add_subcommand("jarosz", "explicit renormings on C^n");
  jz->require_subcommand(1);
  int gamma_count = 2, variant = 2;
  std::string inner_file, secondary_file, x0_arg, lambdas_file;
  auto* jz_c2 = jz->add_subcommand("c2", "the C^2 norm with only trivial isometries");
  jz_c2->add_option("--lambdas", lambdas_file, "JSON [[re,im]x4]");
  jz_c2->add_option("--x", x_arg, "evaluate at x (4 reals)");
  jz_c2->callback([&] {
    manifest.command = "jarosz-c2";
    if (!lambdas_file.empty())
      manifest.inputs["lambdas"] = load_json_file(lambdas_file);
    if (!x_arg.empty()) manifest.inputs["x"] = parse_vector_arg(x_arg);
  });
  auto* jz_double = jz->add_subcommand("double", "order/sign-rigid sup norms");
  jz_double->add_option("--gamma-count", gamma_count);
  jz_double->add_option("--variant", variant);
  jz_double->add_option("--x", x_arg);
  jz_double->callback([&] {
    manifest.command = "jarosz-double";
    manifest.inputs["gamma_count"] = gamma_count;
    manifest.inputs["variant"] = variant;
    if (!x_arg.empty()) manifest.inputs["x"] = parse_vector_arg(x_arg);
  });
  auto* jz_extend = jz->add_subcommand("extend", "extension gauge on X + C");
  jz_extend->add_option("--inner", inner_file)->required();
  jz_extend->add_option("--secondary", secondary_file)->required();
  jz_extend->add_option("--x0", x0_arg)->required();
  jz_extend->add_option("--x", x_arg);
  jz_extend->callback([&] {
    manifest.command = "jarosz-extend";
    manifest.inputs["inner"] = load_json_file(inner_file);
    manifest.inputs["secondary"] = load_json_file(secondary_file);
    manifest.inputs["x0"] = parse_vector_arg(x0_arg);
    if (!x_arg.empty()) manifest.inputs["x"] = parse_vector_arg(x_arg);
  });

  // render
  int resolution = 360;
  auto* render = app.add_subcommand("render", "2D unit ball SVG + CSV");
  render->add_option("--file", norm_file, "norm descriptor JSON")->required();
  render->add_option("--resolution", resolution);
  render->callback([&] {
    manifest.command = "render";
    manifest.inputs["norm"] = load_json_file(norm_file);
    manifest.inputs["resolution"] = resolution;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  manifest.seed = seed;
  manifest.output_dir = output_dir;
  if (threads > 0) manifest.config["threads"] = threads;

  try {
    return execute(manifest, quiet);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const renorm::argument_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const renorm::spec_error& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return 2;
  } catch (const renorm::construction_error& e) {
    std::cerr << "construction error: " << e.what() << "\n";
    return 3;
  } catch (const renorm::solver_error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
