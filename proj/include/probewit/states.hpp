// SPDX-License-Identifier: Apache-2.0
//
// Two-qubit state constructors and the positive-partial-transpose test.
// The computational basis is ordered |00>, |01>, |10>, |11> with the first
// label belonging to qubit 1.

#pragma once

#include <cstdint>
#include <vector>

#include "probewit/qmath.hpp"

namespace probewit {

struct BlochAngles {
  double theta = 0.0;  // polar, [0, pi]
  double phi = 0.0;    // azimuth, [0, 2 pi)
};

struct PureState {
  std::vector<Complex> amps;
  SpaceLayout layout;

  CMatrix projector() const;
};

struct DensityMatrix {
  CMatrix op;
  SpaceLayout layout;
};

// Validates hermiticity (1e-12), unit trace (1e-12) and positivity
// (eigenvalues >= -1e-10); throws ContractError otherwise.
DensityMatrix make_density(CMatrix op, SpaceLayout layout);

DensityMatrix density_from_pure(const PureState& psi);

enum class BellKind { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

PureState bell_state(BellKind kind);

// Bell-projector witnesses I - 2|psi_-+><psi_-+| and I - 2|psi_+><psi_+|.
CMatrix witness_w_minus();
CMatrix witness_w_plus();

// p |psi-><psi-| + (1-p) I/4, p in [0, 1].
DensityMatrix werner(double p);

// |a1> tensor |a2> with |a> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
// phi is wrapped into [0, 2 pi); theta must lie in [0, pi] up to rounding.
PureState product_state(const BlochAngles& a1, const BlochAngles& a2);

// Reduction of a seeded Gaussian pure state on a dim x rank composite; the
// result is a density matrix of the requested rank (to a 1e-8 eigenvalue
// cutoff).  Identical seeds give identical matrices.
DensityMatrix random_density(std::uint64_t seed, int dim, int rank);

struct PptResult {
  bool entangled = false;
  double min_pt_eigenvalue = 0.0;
};

// Partial transpose on the second qubit; entangled iff the transposed matrix
// has an eigenvalue below -1e-10.  Exact for two qubits.  Requires a [2,2]
// layout.
PptResult ppt_check(const DensityMatrix& rho);

SpaceLayout two_qubit_layout();

}  // namespace probewit
