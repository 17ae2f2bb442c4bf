// SPDX-License-Identifier: Apache-2.0
//
// Runs the full calibration suite and prints one line per check, so CI
// logs show every residual next to its allowance.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <vector>

#include "probewit/verify.hpp"

using namespace probewit;

TEST_CASE("calibration suite passes end to end") {
  const std::vector<CheckResult> results = run_all_checks(20260819);
  CHECK(results.size() == 13);
  for (const CheckResult& r : results) {
    std::printf("[%s] %-34s residual %.3e  tolerance %.3e  (%s)\n",
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.residual,
                r.tolerance, r.note.c_str());
    CHECK_MESSAGE(r.pass, r.name, " -> ", r.note, ", residual ", r.residual,
                  " over tolerance ", r.tolerance);
  }
}
