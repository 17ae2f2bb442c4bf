#pragma once
// SPDX-License-Identifier: Apache-2.0

#include <array>

#include "probewit/interference.hpp"
#include "probewit/qmath.hpp"

namespace probewit {

// Photon scattering off two trapped spin-1/2 atoms. Each atom scatters
// resonant light through its dipole transition, and on a spin-1/2
// multiplet the dipole operator is the spin operator itself, so a
// scattering event (k, eps) -> (k', eps') contributes the atom operator
// (conj(eps') . tau)(tau . eps). Interaction-strength prefactors are set
// to one throughout; witness verdicts never depend on them because the
// separable floor is computed for the same operator.

using Vec3 = std::array<double, 3>;
using CVec3 = std::array<Complex, 3>;

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);
Vec3 normalized(const Vec3& a);
CVec3 complexify(const Vec3& a);
// conj(a) . b, the inner product under which polarization bases are
// orthonormal.
Complex conj_dot(const CVec3& a, const CVec3& b);

// Fixed scattering arrangement. Directions are unit vectors; positions
// are measured in units of 1/wavenumber, so optical phases are plain dot
// products of direction differences with position differences.
struct ScatteringGeometry {
  Vec3 k_in{0.0, 0.0, 1.0};
  Vec3 k_out{0.0, 0.0, -1.0};
  Vec3 n_axis{1.0, 0.0, 0.0};  // from atom 1 to atom 2
  Vec3 r1{0.0, 0.0, 0.0};
  Vec3 r2{0.0, 0.0, 0.0};
  double wavenumber = 1.0;
};

// Validates unit directions, wavenumber > 0, and that the atom
// separation r2 - r1 lies along n_axis.
ScatteringGeometry make_geometry(const Vec3& k_in, const Vec3& k_out,
                                 const Vec3& n_axis, const Vec3& r1,
                                 const Vec3& r2, double wavenumber = 1.0);

// Backscattering arrangement: incidence at right angles to the atom
// axis, detection in the exact backward direction.
ScatteringGeometry backscatter_geometry();

// Relative phase of the atom-1 path against the atom-2 path when the
// paths are labelled by which atom scatters: (k_hat - k_hat') . (r1 - r2).
double single_scatter_phase(const ScatteringGeometry& geom);
// Relative phase when the paths are labelled by visiting order:
// (k_hat + k_hat') . (r1 - r2). Vanishes identically for k_out = -k_in.
double double_scatter_phase(const ScatteringGeometry& geom);

// Orthonormal pair spanning the plane transverse to an attached
// propagation direction. The span is physical; the pair itself is gauge.
struct PolarizationBasis {
  CVec3 e1;
  CVec3 e2;
  Vec3 k_hat;
};

PolarizationBasis make_basis(const CVec3& e1, const CVec3& e2, const Vec3& k_hat);
// e1 along z x k_hat (along x when k_hat is parallel to z), e2 = k_hat x e1.
PolarizationBasis canonical_basis(const Vec3& k_hat);

struct ProbePreparation {
  enum class Kind { Unpolarized, Pure };
  Kind kind = Kind::Unpolarized;
  CVec3 polarization{};

  static ProbePreparation unpolarized() { return {}; }
  static ProbePreparation pure(const CVec3& eps) {
    return {Kind::Pure, eps};
  }
};

struct DetectionChannel {
  enum class Kind { Unanalyzed, Linear };
  Kind kind = Kind::Unanalyzed;
  Vec3 direction{};

  static DetectionChannel unanalyzed() { return {}; }
  static DetectionChannel linear(const Vec3& direction) {
    return {Kind::Linear, direction};
  }
};

// One scattering event off the given atom, as a map from the incoming
// polarization basis to the outgoing one, acting jointly on the target
// pair and the polarization qubit (identity on the other atom).
CMatrix single_scatter_op(int atom, const ScatteringGeometry& geom,
                          const PolarizationBasis& basis_in,
                          const PolarizationBasis& basis_out);

enum class ScatterOrder { Atom1First, Atom2First };

// Two scattering events connected by the far-field exchange projector
// transverse to the atom axis: for order atom-1-first the polarization
// block is sum_mn (conj(eps') . tau2) tau2^m (delta_mn - n_m n_n) tau1^n
// (tau1 . eps); the other order swaps the atom roles.
CMatrix double_scatter_op(ScatterOrder order, const ScatteringGeometry& geom,
                          const PolarizationBasis& basis_in,
                          const PolarizationBasis& basis_out);

// Two-slit interference with the atoms as slits: path A scatters off
// atom 1, path B off atom 2, and the built-in phase offset is the
// optical path difference single_scatter_phase(geom).
ProbeScenario young_scenario(const ScatteringGeometry& geom,
                             const ProbePreparation& prep,
                             const DetectionChannel& channel);

// The read-out operator of the unpolarized, unanalyzed two-slit fringe:
//   (1 + (k.k')^2) 1 + tau1 . D . tau2,
// D = k(x)k + k'(x)k' + (k x k')(x)(k x k').
CMatrix young_dyadic_form(const Vec3& k_in, const Vec3& k_out);

// Backscattering interference of the two visiting orders, unpolarized
// input, detected behind a polarizing splitter. The channel along the
// atom axis reads 4 W_plus (flags the plus superposition of |01> and
// |10>); the channel perpendicular to both the axis and the beam reads
// 4 W_minus (flags the singlet).
ProbeScenario cbs_scenario(const DetectionChannel& channel);
ProbeScenario cbs_scenario(const DetectionChannel& channel,
                           const ScatteringGeometry& geom);

// Single-scattering fringe in the backscattering arrangement, the
// background on top of which the double-scattering signal rides. Its
// visibility is (1 + <tau1^z tau2^z>)/2 with z along the beam, and its
// peak sits at zero phase, so destructive fringes cannot come from it.
InterferencePattern single_scattering_background(
    const DensityMatrix& rho12,
    const DetectionChannel& channel = DetectionChannel::unanalyzed());

}  // namespace probewit
