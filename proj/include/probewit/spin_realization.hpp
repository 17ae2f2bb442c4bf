#pragma once
// SPDX-License-Identifier: Apache-2.0

#include <string>

#include "probewit/interference.hpp"
#include "probewit/qmath.hpp"

namespace probewit {

// Ring interferometer for a spin-1/2 probe: one magnetic impurity sits
// in each arm, and the probe exchanges spin with the impurity it passes
// via exp(-i sum_m (g_m t) sigma^m tau^m).

// Contact phases g_m * t, per spin component, for one arm.
struct SpinCoupling {
  double gx_t = 0.0;
  double gy_t = 0.0;
  double gz_t = 0.0;

  static SpinCoupling isotropic(double gt) { return {gt, gt, gt}; }
};

// The arm unitary on the qubit1 x qubit2 x probe space; impurity is 1 or 2.
CMatrix spin_flip_unitary(const SpinCoupling& c, int impurity);

// Probe trace of T_B^dag T_A for equal isotropic contact phases gt:
//   ( |e^{-2igt} + cos(2gt)|^2 * 1  +  sin^2(2gt) * tau1.tau2 ) / 2.
// This is what an unpolarized, unanalyzed fringe reads out.
CMatrix cross_trace_closed_form(double gt);

ProbeScenario ring_scenario(std::string name, const SpinCoupling& arm_a,
                            const SpinCoupling& arm_b, CMatrix rho_p,
                            CMatrix p_obs);

// Unpolarized probe, detection without spin analysis, equal couplings.
ProbeScenario isotropic_scenario(double gt);

// Contact phase pi/4 in both arms: the fringe reads the swap operator,
// i.e. the witness whose only negative eigenstate is the singlet.
ProbeScenario singlet_scenario();

enum class TripletVariant { Stronger, Reversed };

// Detunes the x and y couplings of arm A's impurity (contact phase 3pi/4
// or -pi/4 instead of pi/4) so the fringe reads the triplet witness.
// Both detunings produce the same read-out operator.
ProbeScenario anisotropic_triplet_scenario(TripletVariant variant);

// Keeps the symmetric pi/4 couplings but polarizes the probe along z and
// analyzes the detected spin along z. Reads W_+ + (tau1^z + tau2^z)/2,
// whose separable floor sits at -1/4 instead of 0.
ProbeScenario effective_triplet_scenario();

enum class ProbeAxis { X, Y };

// Effective triplet scenario with preparation and analysis rotated from
// z onto x or y. Axis x flags (|00> - |11>)/sqrt(2); axis y flags
// (|00> + |11>)/sqrt(2).
ProbeScenario rotated_phi_scenario(ProbeAxis axis);

}  // namespace probewit
