// SPDX-License-Identifier: Apache-2.0
//
// probewit command line front end.
//
//   probewit pattern --config cfg.json --out results/ [--grid N] [--svg]
//   probewit witness --config cfg.json --out results/
//   probewit scan    --config cfg.json --out results/
//   probewit verify  [--seed N]
//
// Exit codes: 0 success, 2 bad usage or malformed config, 3 violated
// physics contract (e.g. a non-density target matrix), 4 verification
// failure.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "probewit/config.hpp"
#include "probewit/runner.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  probewit::RunOptions options;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_fringe_flags) {
  cmd->add_option("--config", args.config_path, "scenario config file (JSON)")
      ->required();
  cmd->add_option("--out", args.options.out_dir, "output directory")
      ->capture_default_str();
  cmd->add_option("--seed", args.options.seed, "seed recorded in the report")
      ->capture_default_str();
  if (with_fringe_flags) {
    cmd->add_option("--grid", args.options.grid, "fringe sample count")
        ->capture_default_str();
    cmd->add_flag("--svg", args.options.svg, "also render the fringe as SVG");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-qubit witness reconstruction from single-probe fringes"};
  app.require_subcommand(1);

  CommonArgs pattern_args, witness_args, scan_args;
  std::uint64_t verify_seed = 20260819;

  CLI::App* pattern = app.add_subcommand(
      "pattern", "sample the fringe and report the reconstructed witness");
  add_common(pattern, pattern_args, true);

  CLI::App* witness = app.add_subcommand(
      "witness", "reconstruct the witness and report the verdict");
  add_common(witness, witness_args, false);

  CLI::App* scan = app.add_subcommand(
      "scan", "sweep a scenario parameter and tabulate verdicts");
  add_common(scan, scan_args, false);

  CLI::App* verify = app.add_subcommand(
      "verify", "run the built-in calibration suite");
  verify->add_option("--seed", verify_seed, "seed for randomized checks")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (pattern->parsed()) {
      const probewit::ScenarioConfig cfg =
          probewit::load_config(pattern_args.config_path);
      return probewit::cmd_pattern(cfg, pattern_args.options);
    }
    if (witness->parsed()) {
      const probewit::ScenarioConfig cfg =
          probewit::load_config(witness_args.config_path);
      return probewit::cmd_witness(cfg, witness_args.options);
    }
    if (scan->parsed()) {
      const probewit::ScenarioConfig cfg =
          probewit::load_config(scan_args.config_path);
      return probewit::cmd_scan(cfg, scan_args.options);
    }
    return probewit::cmd_verify(verify_seed, std::cout);
  } catch (const probewit::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const probewit::ContractError& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected failure: " << e.what() << "\n";
    return 3;
  }
}
