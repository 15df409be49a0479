#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "commands.hpp"
#include "config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Moving-end nonlinear beam solver and verification harness", "mbeam"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::optional<std::string> out_dir;
  std::vector<std::string> overrides;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"validate", "check the boundary and parameter hypotheses on [0, T]"},
      {"solve", "time-step one run; writes trace.csv and solution_<t>.csv"},
      {"mms", "one manufactured-solution run; writes errors.csv"},
      {"convergence", "refinement study; writes convergence.csv"},
      {"theta-sweep", "error over (h, theta); writes theta_sweep.csv"},
      {"energy", "energy series and decay fit; writes energy.csv and energy_fit.csv"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config,-c", config_path, "YAML run configuration")->check(CLI::ExistingFile);
    sub->add_option("--out,-o", out_dir, "output directory (overrides 'out')");
    sub->add_option("--set,-s", overrides, "key=value override, repeatable")->take_all();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : mbeam::cli::kConfigError;
  }

  mbeam::cli::RunConfig config;
  try {
    config = mbeam::cli::parse_config(config_path, overrides);
  } catch (const mbeam::Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return mbeam::cli::kConfigError;
  }
  if (out_dir) config.out = *out_dir;
  return mbeam::cli::run_command(app.get_subcommands().front()->get_name(), config);
}
