#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

std::vector<std::pair<std::string, std::string>> parse_sets(const std::vector<std::string>& sets) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw CLI::ValidationError("--set", "expected section.key=value, got '" + s + "'");
    }
    out.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ringgyro::cli;

  CLI::App app{"Rotation sensing on a ring: Fisher information of matter-wave gyroscopes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", RINGGYRO_VERSION);

  RunRequest run;
  std::vector<std::string> run_sets;
  auto* run_cmd = app.add_subcommand("run", "Run one scheme and write CSV outputs");
  run_cmd->add_option("config", run.config, "Scheme config file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("out_dir", run.out_dir, "Output directory")->required();
  run_cmd->add_option("--omega", run.omega, "Rotation rate at which derivatives are taken");
  run_cmd->add_option("--delta", run.delta, "Finite-difference step in units of hbar/(m R^2)");
  run_cmd->add_option("--threads", run.threads, "Concurrent Omega-offset runs (1-5)");
  run_cmd->add_option("--set", run_sets, "Override a config value: section.key=value");

  std::string cal_config;
  std::vector<std::string> cal_sets;
  auto* cal_cmd = app.add_subcommand("calibrate-barrier", "Find the barrier amplitude for the target reflection");
  cal_cmd->add_option("config", cal_config, "Scheme config file")->required()->check(CLI::ExistingFile);
  cal_cmd->add_option("--set", cal_sets, "Override a config value: section.key=value");

  std::string gs_config, gs_out;
  std::vector<std::string> gs_sets;
  auto* gs_cmd = app.add_subcommand("ground-state", "Relax the harmonic trap ground state");
  gs_cmd->add_option("config", gs_config, "Scheme config file")->required()->check(CLI::ExistingFile);
  gs_cmd->add_option("out", gs_out, "State file to write")->required();
  gs_cmd->add_option("--set", gs_sets, "Override a config value: section.key=value");

  RunRequest sweep;
  std::vector<std::string> sweep_sets, sweep_values;
  std::string sweep_param, sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run one scheme per parameter value");
  sweep_cmd->add_option("config", sweep.config, "Scheme config file")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--param", sweep_param, "Config key to vary, section.key")->required();
  sweep_cmd->add_option("--values", sweep_values, "Comma-separated values")->required()->delimiter(',');
  sweep_cmd->add_option("--out", sweep_out, "Root directory for the per-value outputs")->required();
  sweep_cmd->add_option("--omega", sweep.omega, "Rotation rate at which derivatives are taken");
  sweep_cmd->add_option("--delta", sweep.delta, "Finite-difference step in units of hbar/(m R^2)");
  sweep_cmd->add_option("--threads", sweep.threads, "Concurrent Omega-offset runs (1-5)");
  sweep_cmd->add_option("--set", sweep_sets, "Override a config value: section.key=value");

  try {
    app.parse(argc, argv);
    if (*run_cmd) {
      run.overrides = parse_sets(run_sets);
      return cmd_run(run, std::cout, std::cerr);
    }
    if (*cal_cmd) return cmd_calibrate_barrier(cal_config, parse_sets(cal_sets), std::cout, std::cerr);
    if (*gs_cmd) return cmd_ground_state(gs_config, gs_out, parse_sets(gs_sets), std::cout, std::cerr);
    sweep.overrides = parse_sets(sweep_sets);
    return cmd_sweep(sweep, sweep_param, sweep_values, sweep_out, std::cout, std::cerr);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }
}
