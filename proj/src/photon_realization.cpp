// SPDX-License-Identifier: Apache-2.0
#include "probewit/photon_realization.hpp"

#include <cmath>
#include <string>

namespace probewit {

double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  if (n < 1e-14) throw UsageError("cannot normalize a zero vector");
  return {a[0] / n, a[1] / n, a[2] / n};
}

CVec3 complexify(const Vec3& a) {
  return {Complex(a[0], 0.0), Complex(a[1], 0.0), Complex(a[2], 0.0)};
}

Complex conj_dot(const CVec3& a, const CVec3& b) {
  Complex acc{0.0, 0.0};
  for (int i = 0; i < 3; ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

namespace {

bool finite(const Vec3& v) {
  return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

void require_unit(const Vec3& v, const char* what) {
  if (!finite(v)) throw UsageError(std::string(what) + " must be finite");
  if (std::abs(norm(v) - 1.0) > 1e-12)
    throw UsageError(std::string(what) + " must be a unit vector");
}

Vec3 minus(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

CMatrix tau_dot(const CVec3& v) {
  const CMatrix paulis[3] = {pauli_x(), pauli_y(), pauli_z()};
  CMatrix acc(2, 2);
  for (int m = 0; m < 3; ++m) acc = acc + v[m] * paulis[m];
  return acc;
}

CVec3 conjugated(const CVec3& v) {
  return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])};
}

CMatrix on_atom(const CMatrix& op, int atom) {
  const CMatrix eye2 = CMatrix::identity(2);
  return atom == 1 ? kron(op, eye2) : kron(eye2, op);
}

// Assembles the joint operator from per-polarization target blocks:
// full[(t', a), (t, b)] = block(a, b)[t', t].
CMatrix assemble_blocks(const CMatrix blocks[2][2]) {
  CMatrix t(8, 8);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int tp = 0; tp < 4; ++tp)
        for (int tt = 0; tt < 4; ++tt)
          t(2 * tp + a, 2 * tt + b) = blocks[a][b](tp, tt);
  return t;
}

void require_attached(const PolarizationBasis& basis, const Vec3& k,
                      const char* what) {
  if (norm(minus(basis.k_hat, k)) > 1e-12)
    throw UsageError(std::string(what) + " basis is not attached to this direction");
}

CMatrix probe_state_for(const ProbePreparation& prep,
                        const PolarizationBasis& basis_in, const Vec3& k_in) {
  if (prep.kind == ProbePreparation::Kind::Unpolarized)
    return 0.5 * CMatrix::identity(2);
  const CVec3& eps = prep.polarization;
  for (const Complex& c : eps)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw UsageError("polarization must be finite");
  if (std::abs(conj_dot(eps, eps).real() - 1.0) > 1e-10)
    throw UsageError("polarization must be a unit vector");
  if (std::abs(conj_dot(complexify(k_in), eps)) > 1e-10)
    throw UsageError("polarization must be transverse to the incoming beam");
  const Complex c1 = conj_dot(basis_in.e1, eps);
  const Complex c2 = conj_dot(basis_in.e2, eps);
  CMatrix rho(2, 2);
  rho(0, 0) = c1 * std::conj(c1);
  rho(0, 1) = c1 * std::conj(c2);
  rho(1, 0) = c2 * std::conj(c1);
  rho(1, 1) = c2 * std::conj(c2);
  return rho;
}

CMatrix observable_for(const DetectionChannel& channel,
                       const PolarizationBasis& basis_out, const Vec3& k_out) {
  if (channel.kind == DetectionChannel::Kind::Unanalyzed)
    return CMatrix::identity(2);
  require_unit(channel.direction, "analyzer direction");
  if (std::abs(dot(channel.direction, k_out)) > 1e-10)
    throw UsageError("analyzer direction must be transverse to the outgoing beam");
  const CVec3 d = complexify(channel.direction);
  const Complex p1 = conj_dot(basis_out.e1, d);
  const Complex p2 = conj_dot(basis_out.e2, d);
  CMatrix p(2, 2);
  p(0, 0) = p1 * std::conj(p1);
  p(0, 1) = p1 * std::conj(p2);
  p(1, 0) = p2 * std::conj(p1);
  p(1, 1) = p2 * std::conj(p2);
  return p;
}

}  // namespace

ScatteringGeometry make_geometry(const Vec3& k_in, const Vec3& k_out,
                                 const Vec3& n_axis, const Vec3& r1,
                                 const Vec3& r2, double wavenumber) {
  require_unit(k_in, "incoming direction");
  require_unit(k_out, "outgoing direction");
  require_unit(n_axis, "atom axis");
  if (!finite(r1) || !finite(r2)) throw UsageError("positions must be finite");
  if (!(wavenumber > 0.0) || !std::isfinite(wavenumber))
    throw UsageError("wavenumber must be positive");
  const Vec3 sep = minus(r2, r1);
  const double along = dot(sep, n_axis);
  const Vec3 residual = minus(sep, {along * n_axis[0], along * n_axis[1],
                                    along * n_axis[2]});
  if (norm(residual) > 1e-10 * std::max(1.0, norm(sep)))
    throw UsageError("atom separation must lie along the atom axis");
  return {k_in, k_out, n_axis, r1, r2, wavenumber};
}

ScatteringGeometry backscatter_geometry() {
  return make_geometry({0.0, 0.0, 1.0}, {0.0, 0.0, -1.0}, {1.0, 0.0, 0.0},
                       {0.0, 0.0, 0.0}, {10.0, 0.0, 0.0});
}

double single_scatter_phase(const ScatteringGeometry& geom) {
  return dot(minus(geom.k_in, geom.k_out), minus(geom.r1, geom.r2));
}

double double_scatter_phase(const ScatteringGeometry& geom) {
  const Vec3 sum{geom.k_in[0] + geom.k_out[0], geom.k_in[1] + geom.k_out[1],
                 geom.k_in[2] + geom.k_out[2]};
  return dot(sum, minus(geom.r1, geom.r2));
}

PolarizationBasis make_basis(const CVec3& e1, const CVec3& e2, const Vec3& k_hat) {
  require_unit(k_hat, "propagation direction");
  const CVec3 k = complexify(k_hat);
  if (std::abs(conj_dot(e1, e1) - 1.0) > 1e-12 ||
      std::abs(conj_dot(e2, e2) - 1.0) > 1e-12 ||
      std::abs(conj_dot(e1, e2)) > 1e-12)
    throw UsageError("polarization pair must be orthonormal");
  // Transversality of the vectors themselves (real and imaginary parts).
  for (const CVec3* e : {&e1, &e2}) {
    Complex along{0.0, 0.0};
    for (int i = 0; i < 3; ++i) along += (*e)[i] * k[i];
    if (std::abs(along) > 1e-12)
      throw UsageError("polarization pair must be transverse to the beam");
  }
  return {e1, e2, k_hat};
}

PolarizationBasis canonical_basis(const Vec3& k_hat) {
  require_unit(k_hat, "propagation direction");
  const Vec3 z{0.0, 0.0, 1.0};
  Vec3 first = cross(z, k_hat);
  if (norm(first) < 1e-9) {
    // Beam along z: fall back to x, re-orthogonalized for safety.
    const Vec3 x{1.0, 0.0, 0.0};
    const double along = dot(x, k_hat);
    first = minus(x, {along * k_hat[0], along * k_hat[1], along * k_hat[2]});
  }
  const Vec3 e1 = normalized(first);
  const Vec3 e2 = cross(k_hat, e1);
  return {complexify(e1), complexify(e2), k_hat};
}

CMatrix single_scatter_op(int atom, const ScatteringGeometry& geom,
                          const PolarizationBasis& basis_in,
                          const PolarizationBasis& basis_out) {
  if (atom != 1 && atom != 2) throw UsageError("atom must be 1 or 2");
  require_attached(basis_in, geom.k_in, "incoming");
  require_attached(basis_out, geom.k_out, "outgoing");
  const CVec3 in[2] = {basis_in.e1, basis_in.e2};
  const CVec3 out[2] = {basis_out.e1, basis_out.e2};
  CMatrix blocks[2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      blocks[a][b] = on_atom(tau_dot(conjugated(out[a])) * tau_dot(in[b]), atom);
  return assemble_blocks(blocks);
}

CMatrix double_scatter_op(ScatterOrder order, const ScatteringGeometry& geom,
                          const PolarizationBasis& basis_in,
                          const PolarizationBasis& basis_out) {
  require_attached(basis_in, geom.k_in, "incoming");
  require_attached(basis_out, geom.k_out, "outgoing");
  const CVec3 in[2] = {basis_in.e1, basis_in.e2};
  const CVec3 out[2] = {basis_out.e1, basis_out.e2};
  const CMatrix paulis[3] = {pauli_x(), pauli_y(), pauli_z()};
  const Vec3& n = geom.n_axis;
  const int first_atom = order == ScatterOrder::Atom1First ? 1 : 2;
  const int last_atom = 3 - first_atom;

  CMatrix blocks[2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const CMatrix emit = tau_dot(conjugated(out[a]));
      const CMatrix absorb = tau_dot(in[b]);
      CMatrix block(4, 4);
      for (int m = 0; m < 3; ++m)
        for (int nn = 0; nn < 3; ++nn) {
          const double proj = (m == nn ? 1.0 : 0.0) - n[m] * n[nn];
          if (proj == 0.0) continue;
          block = block + proj * (on_atom(emit * paulis[m], last_atom) *
                                  on_atom(paulis[nn] * absorb, first_atom));
        }
      blocks[a][b] = block;
    }
  return assemble_blocks(blocks);
}

ProbeScenario young_scenario(const ScatteringGeometry& geom,
                             const ProbePreparation& prep,
                             const DetectionChannel& channel) {
  const PolarizationBasis basis_in = canonical_basis(geom.k_in);
  const PolarizationBasis basis_out = canonical_basis(geom.k_out);
  return make_scenario("young", single_scatter_op(1, geom, basis_in, basis_out),
                       single_scatter_op(2, geom, basis_in, basis_out),
                       probe_state_for(prep, basis_in, geom.k_in),
                       observable_for(channel, basis_out, geom.k_out),
                       single_scatter_phase(geom));
}

CMatrix young_dyadic_form(const Vec3& k_in, const Vec3& k_out) {
  require_unit(k_in, "incoming direction");
  require_unit(k_out, "outgoing direction");
  const Vec3 kk = cross(k_in, k_out);
  const CMatrix paulis[3] = {pauli_x(), pauli_y(), pauli_z()};
  const double kdot = dot(k_in, k_out);
  CMatrix m = (1.0 + kdot * kdot) * CMatrix::identity(4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double dyad =
          k_in[i] * k_in[j] + k_out[i] * k_out[j] + kk[i] * kk[j];
      m = m + dyad * kron(paulis[i], paulis[j]);
    }
  return m;
}

ProbeScenario cbs_scenario(const DetectionChannel& channel) {
  return cbs_scenario(channel, backscatter_geometry());
}

ProbeScenario cbs_scenario(const DetectionChannel& channel,
                           const ScatteringGeometry& geom) {
  if (std::abs(dot(geom.k_in, geom.n_axis)) > 1e-10)
    throw UsageError("beam must hit the atom axis at a right angle");
  const Vec3 reversed{-geom.k_in[0], -geom.k_in[1], -geom.k_in[2]};
  if (norm(minus(geom.k_out, reversed)) > 1e-10)
    throw UsageError("detection must sit in the exact backward direction");
  if (channel.kind != DetectionChannel::Kind::Linear)
    throw UsageError("backscattering read-out needs a polarizing splitter channel");
  require_unit(channel.direction, "analyzer direction");
  const double along_axis = std::abs(dot(channel.direction, geom.n_axis));
  const double along_side = std::abs(dot(channel.direction, cross(geom.n_axis, geom.k_in)));
  if (std::abs(along_axis - 1.0) > 1e-10 && std::abs(along_side - 1.0) > 1e-10)
    throw UsageError(
        "analyzer must be aligned with the atom axis or perpendicular to "
        "axis and beam");

  const PolarizationBasis basis_in = canonical_basis(geom.k_in);
  const PolarizationBasis basis_out = canonical_basis(geom.k_out);
  return make_scenario(
      "cbs",
      double_scatter_op(ScatterOrder::Atom1First, geom, basis_in, basis_out),
      double_scatter_op(ScatterOrder::Atom2First, geom, basis_in, basis_out),
      0.5 * CMatrix::identity(2),
      observable_for(channel, basis_out, geom.k_out),
      double_scatter_phase(geom));
}

InterferencePattern single_scattering_background(const DensityMatrix& rho12,
                                                 const DetectionChannel& channel) {
  const ProbeScenario s = young_scenario(
      backscatter_geometry(), ProbePreparation::unpolarized(), channel);
  return pattern_params(s, rho12);
}

}  // namespace probewit
