#pragma once
// SPDX-License-Identifier: Apache-2.0

#include <string>
#include <vector>

#include "probewit/qmath.hpp"
#include "probewit/states.hpp"

namespace probewit {

// Margin below the separable floor required before a target counts as
// detected. Guards against optimizer and roundoff slack in the floor.
inline constexpr double kDecisionTolerance = 1e-6;

// Two-path interference of a single probe coupled to a two-qubit target.
//
// The probe enters in state rho_p and takes both paths at once. Path A
// applies t_a to the joint target+probe state and carries the phase
// knob: a controllable phase phi plus the scenario's fixed phase_offset.
// Path B applies t_b with zero phase by convention (only the difference
// is physical). Behind the recombination point a detector measures the
// probe observable p_obs, so the counting rate traces a sinusoidal
// fringe as phi is scanned.
struct ProbeScenario {
  std::string name;
  CMatrix t_a;
  CMatrix t_b;
  CMatrix rho_p;
  CMatrix p_obs;
  SpaceLayout layout;
  double phase_offset = 0.0;
  bool p_obs_psd = true;

  int probe_dim() const { return layout.factors.back(); }
};

// Validates shapes, Hermiticity of rho_p and p_obs, and that rho_p is a
// unit-trace positive matrix. Records whether p_obs is positive
// semidefinite; indefinite observables are allowed (they model signed
// combinations of detector ports) but give up the visibility <= 1 bound.
ProbeScenario make_scenario(std::string name, CMatrix t_a, CMatrix t_b,
                            CMatrix rho_p, CMatrix p_obs,
                            double phase_offset = 0.0);

// I(phi) = background + 2 Re(e^{i phi} cross), where cross is the
// expectation of t_b^dag p_obs t_a on the joint input state with the
// fixed phase_offset already folded in.
struct FringeCoefficients {
  double background = 0.0;
  Complex cross{0.0, 0.0};
};

FringeCoefficients fringe_coefficients(const ProbeScenario& scenario,
                                       const DensityMatrix& target);

double intensity(const FringeCoefficients& f, double phi);
double intensity(const ProbeScenario& scenario, const DensityMatrix& target,
                 double phi);

// Same fringe in the conventional form I(phi) = i0 (1 + v cos(phi - alpha)).
// For a dark pattern (|i0| below 1e-12) visibility and alpha are reported
// as zero; for a negative background (possible only with an indefinite
// observable) visibility stays nonnegative and alpha absorbs the sign.
struct InterferencePattern {
  double i0 = 0.0;
  double visibility = 0.0;
  double alpha = 0.0;
};

InterferencePattern pattern_params(const FringeCoefficients& f);
InterferencePattern pattern_params(const ProbeScenario& scenario,
                                   const DensityMatrix& target);

// Least-squares fit of sampled intensities to a + b cos(phi) + c sin(phi).
// Throws ContractError when the phase samples cannot distinguish the
// three basis functions.
InterferencePattern fit_pattern(const std::vector<double>& phi,
                                const std::vector<double>& observed);

// Maps an angle to the interval (-pi, pi].
double wrap_angle(double a);

// The target operator read off the fringe: a Hermitian 4x4 matrix m with
//   tr(m rho) = i0 * visibility * cos(alpha)
// for every two-qubit target rho probed by this scenario.
CMatrix extract_observable(const ProbeScenario& scenario);

// Minimum of tr(m rho1 x rho2) over pure product states, found by a
// midpoint grid over both Bloch spheres followed by coordinate descent
// from the best grid cells.
struct SeparableMinimum {
  double value = 0.0;
  BlochAngles qubit1;
  BlochAngles qubit2;
  long evaluations = 0;
};

SeparableMinimum separable_minimum(const CMatrix& m);

// Verdict for one probed target: the target is flagged as entangled when
// its expectation undercuts the separable floor by more than
// kDecisionTolerance. The independent ppt_verdict comes from the partial
// transpose criterion, so a correct witness never flags a state the
// transpose test clears.
struct WitnessReport {
  CMatrix m;
  double separable_min = 0.0;
  double target_expectation = 0.0;
  double margin = 0.0;  // separable_min - target_expectation
  bool verdict = false;
  bool ppt_verdict = false;
};

WitnessReport witness_verdict(const CMatrix& m, const DensityMatrix& target,
                              const SeparableMinimum& floor);
WitnessReport witness_verdict(const CMatrix& m, const DensityMatrix& target);
WitnessReport witness_verdict(const ProbeScenario& scenario,
                              const DensityMatrix& target);

}  // namespace probewit
