#pragma once
// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration: a versioned JSON document naming a realization,
// its parameters, the two-qubit target state, and an optional parameter
// sweep. Parsing is strict: unknown keys, wrong types, and out-of-range
// values are usage errors with field-level diagnostics.

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "probewit/interference.hpp"
#include "probewit/photon_realization.hpp"
#include "probewit/spin_realization.hpp"
#include "probewit/states.hpp"

namespace probewit {

struct TargetSpec {
  enum class Kind { Bell, Werner, Product, Matrix };
  Kind kind = Kind::Bell;
  BellKind bell = BellKind::PsiMinus;
  double werner_p = 0.0;
  BlochAngles qubit1;
  BlochAngles qubit2;
  CMatrix matrix;  // only for Kind::Matrix; validated when built
};

struct SweepSpec {
  std::string parameter;  // werner-p | gt | young-cos-angle
  double start = 0.0;
  double stop = 0.0;
  int points = 2;
};

struct ScenarioConfig {
  std::string realization;

  // spin-singlet
  double gt = 0.0;
  // spin-triplet-anisotropic
  TripletVariant variant = TripletVariant::Stronger;
  // spin-phi-rotated
  ProbeAxis axis = ProbeAxis::X;
  // young + cbs; geometric validity is checked when the scenario is built
  ScatteringGeometry geometry;
  // young
  ProbePreparation preparation;
  DetectionChannel channel;
  // cbs: parallel-n | perp-nk
  std::string cbs_channel;

  TargetSpec target;
  std::optional<SweepSpec> sweep;
};

// Parses and validates a configuration document (see README for the
// schema). Throws UsageError with a field path on any malformed input.
ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);

// Fully explicit echo of a parsed configuration, defaults included.
// Feeding it back to parse_config reproduces the same configuration.
nlohmann::ordered_json canonical_json(const ScenarioConfig& cfg);

// Throws ContractError when an explicit matrix is not a valid state.
DensityMatrix build_target(const TargetSpec& spec);

// Instantiates the configured scenario (the sweep field is ignored here;
// scans rebuild scenarios per grid point as needed).
ProbeScenario build_scenario(const ScenarioConfig& cfg);

}  // namespace probewit
