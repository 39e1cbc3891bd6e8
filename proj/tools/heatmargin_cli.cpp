/* Copyright (c) 2026 heatmargin contributors. All rights reserved.
 * See the LICENSE file for terms and conditions. */

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "heatmargin/cli.hpp"

namespace {

struct CliArgs {
  std::string config;
  std::string data_dir;
  std::string out_dir = "out";
  std::optional<std::string> models;
  std::optional<std::string> param_set;
  std::optional<std::string> demand_mode;
  std::optional<double> grid_step_mw;
  std::optional<std::uint64_t> seed;
  std::optional<int> years;
  bool dump_distributions = false;

  heatmargin::SynthParams synth;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generation adequacy engine for heat electrification studies"};
  app.require_subcommand(1);

  CliArgs args;

  CLI::App* validate =
      app.add_subcommand("validate", "load a dataset and report coverage");
  validate->add_option("--data-dir", args.data_dir, "dataset directory")
      ->required();

  CLI::App* synth = app.add_subcommand(
      "synth", "generate a seeded synthetic dataset and scenario config");
  synth->add_option("--out", args.out_dir, "output directory");
  synth->add_option("--seed", args.synth.seed, "generator seed");
  synth->add_option("--winters", args.synth.n_winters,
                    "number of complete winters");
  synth->add_option("--zones", args.synth.n_zones,
                    "number of temperature zones");
  synth->add_option("--elec-slope", args.synth.elec_slope_mw_per_c,
                    "planted electricity-temperature slope, MW per degree C");
  synth->add_option("--gas-slope", args.synth.gas_slope_gwh_per_c,
                    "planted gas-temperature slope, GWh/day per degree C");

  CLI::App* run = app.add_subcommand(
      "run", "run the adequacy scenario and write reports");
  run->add_option("--config", args.config, "scenario config JSON")
      ->required();
  run->add_option("--data-dir", args.data_dir, "dataset directory")
      ->required();
  run->add_option("--out", args.out_dir, "output directory");
  run->add_option("--models", args.models, "m0, m1, m2 or all");
  run->add_option("--param-set", args.param_set,
                  "parameter set name, or all");
  run->add_option("--demand-mode", args.demand_mode,
                  "empirical or temperature");
  run->add_option("--grid-step", args.grid_step_mw, "capacity grid step, MW");
  run->add_option("--seed", args.seed, "override the scenario RNG seed");
  run->add_option("--years", args.years, "override the horizon, in years");
  run->add_flag("--dump-distributions", args.dump_distributions,
                "also write per-run distribution CSVs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    // Help and version requests exit cleanly; anything else is bad usage.
    return rc == 0 ? heatmargin::kExitOk : heatmargin::kExitConfigError;
  }

  if (validate->parsed()) {
    return heatmargin::cmd_validate(args.data_dir, std::cout, std::cerr);
  }
  if (synth->parsed()) {
    return heatmargin::cmd_synth(args.synth, args.out_dir, std::cout,
                                 std::cerr);
  }
  heatmargin::RunOptions opts;
  opts.models = args.models;
  opts.param_set = args.param_set;
  opts.demand_mode = args.demand_mode;
  opts.grid_step_mw = args.grid_step_mw;
  opts.seed = args.seed;
  opts.years = args.years;
  opts.dump_distributions = args.dump_distributions;
  return heatmargin::cmd_run(args.config, args.data_dir, args.out_dir, opts,
                             std::cout, std::cerr);
}
