#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cflow/io.hpp"
#include "cflow/oracle.hpp"

namespace {

using namespace cflow;

std::string errc_name(std::string code) {
  for (char& ch : code)
    if (ch == '_') ch = '-';
  return code;
}

struct Options {
  std::string curve_file;
  double c = 1.0;
  long seed = 0;
  // flow
  double beta = 0.25;
  double max_time = 1.0;
  long max_steps = 1000000;
  double stop_grad = 0.0;
  double extinction_length = 1e-3;
  double resample_spacing = 0.0;
  std::string out_traj;
  std::string out_final;
  // round
  int corner_index = 0;
  double epsilon = 0.0;
  std::string direction = "inward";
  std::string out_curve;
  // width
  std::string family = "lens";
  double torus_L = 3.0;
  double torus_H = 1.0;
  double sphere_R = 1.0;
  int n_slices = 64;
  int n_points = 0;
  std::string out_profile;
  std::string out_json;
  // lens_table
  std::vector<double> c_list;
  std::string out_table;
};

void emit_manifest(const RunManifest& manifest) {
  if (manifest.outputs.empty()) return;
  write_text_file(manifest.outputs.front() + ".manifest.json",
                  manifest_json(manifest));
}

int run_eval(const Options& opt) {
  const Region region = region_from_json(read_text_file(opt.curve_file));
  std::cout << fc_to_json(eval_fc(region, opt.c));
  return 0;
}

int run_flow(const Options& opt) {
  const DiscreteCurve start = curve_from_json(read_text_file(opt.curve_file));
  FlowConfig config;
  config.c = opt.c;
  config.beta = opt.beta;
  config.max_time = opt.max_time;
  config.max_steps = opt.max_steps;
  config.stop_gradient_norm = opt.stop_grad;
  config.extinction_length = opt.extinction_length;
  config.resample_spacing = opt.resample_spacing;
  const FlowResult result = run(start, config);

  RunManifest manifest;
  manifest.command = "flow";
  manifest.parameters = {
      {"c", format_double(opt.c)},
      {"beta", format_double(opt.beta)},
      {"max_time", format_double(opt.max_time)},
      {"max_steps", std::to_string(opt.max_steps)},
      {"stop_grad", format_double(opt.stop_grad)},
      {"extinction_length", format_double(opt.extinction_length)},
      {"resample_spacing", format_double(opt.resample_spacing)}};
  manifest.inputs = {opt.curve_file};
  manifest.seed = opt.seed;
  if (!opt.out_traj.empty()) manifest.outputs.push_back(opt.out_traj);
  if (!opt.out_final.empty()) manifest.outputs.push_back(opt.out_final);

  if (!opt.out_traj.empty())
    write_text_file(opt.out_traj, trajectory_csv(result));
  if (!opt.out_final.empty())
    write_text_file(opt.out_final, curve_to_json(result.state.curve));
  emit_manifest(manifest);

  std::cout << "termination: " << to_string(result.reason) << "\n";
  return result.reason == Termination::BlowUp
             ? exit_code_for(errc::blow_up)
             : 0;
}

int run_round(const Options& opt) {
  const DiscreteCurve start = curve_from_json(read_text_file(opt.curve_file));
  const CorneredCurve cornered = detect_corners(start);
  if (opt.corner_index < 0 ||
      opt.corner_index >= static_cast<int>(cornered.corners.size()))
    throw GeometryError(errc::bad_curve, "corner index out of range");
  const RoundDirection dir = opt.direction == "outward"
                                 ? RoundDirection::Outward
                                 : RoundDirection::Inward;
  const auto [rounded, report] =
      round_corner(cornered, opt.corner_index, opt.epsilon, opt.c, dir);

  RunManifest manifest;
  manifest.command = "round";
  manifest.parameters = {{"c", format_double(opt.c)},
                         {"corner_index", std::to_string(opt.corner_index)},
                         {"epsilon", format_double(opt.epsilon)},
                         {"direction", opt.direction}};
  manifest.inputs = {opt.curve_file};
  manifest.seed = opt.seed;
  if (!opt.out_curve.empty()) {
    manifest.outputs.push_back(opt.out_curve);
    write_text_file(opt.out_curve, curve_to_json(rounded));
  }
  emit_manifest(manifest);

  std::cout << wedge_report_json(report);
  return 0;
}

int run_width(const Options& opt) {
  SweepoutFamily fam = [&] {
    if (opt.family == "lens") {
      const Surface torus = Surface::torus(opt.torus_L, opt.torus_H);
      return opt.n_points > 0 ? lens_family(torus, opt.c, opt.n_points)
                              : lens_family(torus, opt.c);
    }
    if (opt.family == "latitude") {
      const Surface sphere = Surface::sphere(opt.sphere_R);
      return opt.n_points > 0 ? latitude_family(sphere, opt.n_points)
                              : latitude_family(sphere);
    }
    throw GeometryError(errc::parse, "unknown family: " + opt.family);
  }();
  const WidthEstimate est = eval_family(fam, opt.c, opt.n_slices);

  RunManifest manifest;
  manifest.command = "width";
  manifest.parameters = {{"family", opt.family},
                         {"c", format_double(opt.c)},
                         {"torus_L", format_double(opt.torus_L)},
                         {"torus_H", format_double(opt.torus_H)},
                         {"sphere_R", format_double(opt.sphere_R)},
                         {"n_slices", std::to_string(opt.n_slices)},
                         {"n_points", std::to_string(opt.n_points)}};
  manifest.seed = opt.seed;
  if (!opt.out_profile.empty()) {
    manifest.outputs.push_back(opt.out_profile);
    write_text_file(opt.out_profile, width_csv(est));
  }
  if (!opt.out_json.empty()) {
    manifest.outputs.push_back(opt.out_json);
    write_text_file(opt.out_json, width_to_json(est));
  }
  emit_manifest(manifest);

  std::cout << width_to_json(est);
  return 0;
}

int run_lens_table(const Options& opt) {
  const Surface torus = Surface::torus(opt.torus_L, opt.torus_H);
  const std::string csv = lens_table_csv(torus, opt.c_list);

  RunManifest manifest;
  manifest.command = "lens_table";
  manifest.parameters = {{"torus_L", format_double(opt.torus_L)},
                         {"torus_H", format_double(opt.torus_H)}};
  for (double c : opt.c_list)
    manifest.parameters.emplace_back("c", format_double(c));
  manifest.seed = opt.seed;
  if (!opt.out_table.empty()) {
    manifest.outputs.push_back(opt.out_table);
    write_text_file(opt.out_table, csv);
    emit_manifest(manifest);
  } else {
    std::cout << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constant geodesic curvature curves: functional, flow, "
               "rounding, width"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--seed", opt.seed, "seed recorded in manifests");

  CLI::App* eval = app.add_subcommand("eval", "evaluate F_c on a snapshot");
  eval->add_option("curve", opt.curve_file, "curve snapshot JSON")
      ->required();
  eval->add_option("--c", opt.c, "curvature parameter");

  CLI::App* flow = app.add_subcommand("flow", "run the c-flow");
  flow->add_option("curve", opt.curve_file, "curve snapshot JSON")
      ->required();
  flow->add_option("--c", opt.c, "curvature parameter");
  flow->add_option("--beta", opt.beta, "timestep safety factor");
  flow->add_option("--max-time", opt.max_time, "time horizon");
  flow->add_option("--max-steps", opt.max_steps, "step limit");
  flow->add_option("--stop-grad", opt.stop_grad,
                   "stationary threshold on the gradient norm");
  flow->add_option("--extinction-length", opt.extinction_length,
                   "declare extinction below this length");
  flow->add_option("--resample-spacing", opt.resample_spacing,
                   "target spacing for resampling (0 = initial mean)");
  flow->add_option("--out-traj", opt.out_traj, "trajectory CSV path");
  flow->add_option("--out-final", opt.out_final, "final curve JSON path");

  CLI::App* round = app.add_subcommand("round", "round one corner");
  round->add_option("curve", opt.curve_file, "curve snapshot JSON")
      ->required();
  round->add_option("corner_index", opt.corner_index, "corner id")
      ->required();
  round->add_option("epsilon", opt.epsilon, "rounding radius")->required();
  round->add_option("--c", opt.c, "curvature parameter");
  round->add_option("--direction", opt.direction, "inward or outward");
  round->add_option("--out-curve", opt.out_curve, "rounded curve JSON path");

  CLI::App* width = app.add_subcommand("width", "sweepout width profile");
  width->add_option("--family", opt.family, "lens or latitude")->required();
  width->add_option("--c", opt.c, "curvature parameter");
  width->add_option("--torus-L", opt.torus_L, "torus horizontal side");
  width->add_option("--torus-H", opt.torus_H, "torus vertical side");
  width->add_option("--sphere-R", opt.sphere_R, "sphere radius");
  width->add_option("--n-slices", opt.n_slices, "grid resolution in t");
  width->add_option("--n-points", opt.n_points,
                    "boundary resolution (0 = family default)");
  width->add_option("--out-profile", opt.out_profile, "profile CSV path");
  width->add_option("--out-json", opt.out_json, "estimate JSON path");

  CLI::App* table = app.add_subcommand("lens_table", "exact lens values");
  table->add_option("--torus-L", opt.torus_L, "torus horizontal side");
  table->add_option("--torus-H", opt.torus_H, "torus vertical side");
  table->add_option("--c", opt.c_list, "curvature values")->required();
  table->add_option("--out", opt.out_table, "table CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "cflow: parse: " << e.what() << "\n";
    return exit_code_for(errc::parse);
  }

  try {
    if (app.got_subcommand(eval)) return run_eval(opt);
    if (app.got_subcommand(flow)) return run_flow(opt);
    if (app.got_subcommand(round)) return run_round(opt);
    if (app.got_subcommand(width)) return run_width(opt);
    if (app.got_subcommand(table)) return run_lens_table(opt);
  } catch (const GeometryError& e) {
    std::cerr << "cflow: " << errc_name(e.code()) << ": " << e.what()
              << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "cflow: error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
