#include "dcflow/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dcflow/config.hpp"
#include "dcflow/convergence.hpp"
#include "dcflow/io.hpp"
#include "dcflow/profiles.hpp"
#include "dcflow/solver.hpp"

namespace dcflow::cli {

namespace {

struct CommonArgs {
  std::string config_path;
  std::string output_dir;
  bool allow_unstable = false;
};

RunConfig resolve_config(const CommonArgs& args) {
  RunConfig config = args.config_path.empty() ? RunConfig{} : load_run_config(args.config_path);
  if (!args.output_dir.empty()) config.output_dir = args.output_dir;
  if (args.allow_unstable) config.allow_unstable = true;
  return config;
}

MeshProfile initial_profile(const RunConfig& config, const GridSpec& grid, std::ostream& err) {
  MeshProfile w0 = build_profile(config.profile, grid);
  for (const auto& w : validate_profile(w0)) err << "warning: " << w.message << '\n';
  return w0;
}

std::string render(const auto& writer) {
  std::ostringstream out;
  writer(out);
  return out.str();
}

int simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const GridSpec grid = make_grid(config);
  const MeshProfile w0 = initial_profile(config, grid, err);
  const StabilityReport report = validate_stability(grid, w0, config.derivative_bound);
  const std::string stability_text =
      render([&](std::ostream& o) { io::write_stability_report(o, report); });

  if (!report.hard_ok()) {
    if (!config.allow_unstable) {
      io::write_file(config.output_dir / "stability.txt", stability_text);
      err << "error: " << report.hard_failures() << "; rerun with --allow-unstable to override\n";
      return ExitCode::unstable;
    }
    err << "warning: running despite " << report.hard_failures() << '\n';
  }

  const RunResult result = run(w0, snapshot_times(config));
  io::write_file(config.output_dir / "snapshots.csv",
                 render([&](std::ostream& o) { io::write_snapshots_csv(o, result.snapshots); }));
  io::write_file(config.output_dir / "diagnostics.csv",
                 render([&](std::ostream& o) { io::write_diagnostics_csv(o, result.diagnostics); }));
  io::write_file(config.output_dir / "stability.txt", stability_text);
  out << "n=" << grid.n() << " m=" << grid.m() << " delta_t=" << io::format_double(grid.delta_t())
      << " snapshots=" << result.snapshots.size() << " -> " << config.output_dir.string() << '\n';
  return ExitCode::ok;
}

int converge(const RunConfig& config, int base_n, int levels, std::optional<double> eval_time,
             bool serial, std::ostream& out) {
  const double t_eval = eval_time.value_or(config.t_final);
  if (t_eval > config.t_final || t_eval < 0.0) {
    throw std::invalid_argument("eval-time " + io::format_double(t_eval) + " outside [0, T=" +
                                io::format_double(config.t_final) + "]");
  }
  StudyOptions options;
  options.parallel = !serial;
  options.allow_unstable = config.allow_unstable;
  const ConvergenceReport report = refinement_study(config.profile, config.rho0, config.t_final,
                                                    base_n, levels, t_eval, options);
  io::write_file(config.output_dir / "convergence.csv",
                 render([&](std::ostream& o) { io::write_convergence_csv(o, report); }));
  out << io::format_convergence_table(report);
  return ExitCode::ok;
}

int emit_profile(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const GridSpec grid = make_grid(config);
  const MeshProfile w0 = initial_profile(config, grid, err);
  const auto path = config.output_dir / "profile.csv";
  io::write_file(path, render([&](std::ostream& o) { io::write_profile_csv(o, w0); }));
  out << "wrote " << path.string() << '\n';
  return ExitCode::ok;
}

int validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const GridSpec grid = make_grid(config);
  const MeshProfile w0 = initial_profile(config, grid, err);
  const StabilityReport report = validate_stability(grid, w0, config.derivative_bound);
  io::write_stability_report(out, report);
  if (!report.hard_ok() && !config.allow_unstable) return ExitCode::unstable;
  return ExitCode::ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explicit finite-difference solver for the graphical leading-edge flow"};
  app.require_subcommand(1);

  CommonArgs common;
  app.add_flag("--allow-unstable", common.allow_unstable,
               "Run even when the CFL/domain/gradient conditions fail");

  auto add_common = [&common](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "JSON run configuration")
        ->check(CLI::ExistingFile);
    sub->add_option("--output-dir", common.output_dir, "Override output_dir from the config");
    sub->add_flag("--allow-unstable", common.allow_unstable);
  };

  auto* sim = app.add_subcommand("simulate", "Run the scheme and write snapshots/diagnostics");
  add_common(sim);

  int base_n = 20;
  int levels = 8;
  std::optional<double> eval_time;
  bool serial = false;
  auto* conv = app.add_subcommand("converge", "Grid-refinement study against the finest level");
  add_common(conv);
  conv->add_option("--base-n", base_n, "Cells on the coarsest grid")->check(CLI::PositiveNumber);
  conv->add_option("--levels", levels, "Number of grids, finest is the reference")
      ->check(CLI::Range(2, 30));
  conv->add_option("--eval-time", eval_time, "Time at which errors are measured (default T)");
  conv->add_flag("--serial", serial, "Run levels one after another");

  auto* prof = app.add_subcommand("profile", "Write the initial profile as profile.csv");
  add_common(prof);

  auto* val = app.add_subcommand("validate", "Report the stability conditions for a config");
  add_common(val);

  std::vector<std::string> args(argv + 1, argv + argc);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ExitCode::ok : ExitCode::failure;
  }

  try {
    const RunConfig config = resolve_config(common);
    if (sim->parsed()) return simulate(config, out, err);
    if (conv->parsed()) return converge(config, base_n, levels, eval_time, serial, out);
    if (prof->parsed()) return emit_profile(config, out, err);
    if (val->parsed()) return validate(config, out, err);
  } catch (const StabilityError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::unstable;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::failure;
  }
  return ExitCode::failure;
}

}  // namespace dcflow::cli
