#pragma once
// SPDX-License-Identifier: Apache-2.0
//
// Command implementations behind the CLI verbs. Each command writes its
// artifacts (CSV/JSON, optional SVG) into an output directory and returns
// a process exit code; malformed input surfaces as UsageError and broken
// physics contracts as ContractError, which the CLI maps to exit codes
// 2 and 3 respectively.

#include <cstdint>
#include <filesystem>
#include <ostream>

#include "probewit/config.hpp"

namespace probewit {

struct RunOptions {
  std::filesystem::path out_dir = ".";
  int grid = 73;  // phi samples in [-pi, pi], endpoints included
  std::uint64_t seed = 42;
  bool svg = false;
};

// Fringe table (fringe.csv, optional fringe.svg) plus a full report.json.
int cmd_pattern(const ScenarioConfig& cfg, const RunOptions& opt);

// report.json only: read-out operator, floor, expectation, verdicts.
int cmd_witness(const ScenarioConfig& cfg, const RunOptions& opt);

// Parameter sweep (scan.csv plus report.json); requires cfg.sweep.
int cmd_scan(const ScenarioConfig& cfg, const RunOptions& opt);

// Calibration suite as JSON lines; returns 4 when any check fails.
int cmd_verify(std::uint64_t seed, std::ostream& out);

}  // namespace probewit
