#pragma once
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <string>
#include <vector>

namespace probewit {

// One calibration check: `residual` and `tolerance` describe the part of
// the check that came closest to (or crossed) its allowance; `note` names
// that part. A check passes only when every part stays inside tolerance.
struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

// The full calibration suite: closed forms against brute-force evaluation,
// witness read-outs against their known operators, floor and soundness
// properties of the verdict logic, and fringe-engine self-consistency.
// Deterministic for a fixed seed; runs in seconds.
std::vector<CheckResult> run_all_checks(std::uint64_t seed);

}  // namespace probewit
