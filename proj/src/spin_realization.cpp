// SPDX-License-Identifier: Apache-2.0
#include "probewit/spin_realization.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace probewit {

namespace {

constexpr double kQuarterTurn = std::numbers::pi / 4.0;

CMatrix coupling_generator(const SpinCoupling& c, int impurity) {
  if (impurity != 1 && impurity != 2) throw UsageError("impurity must be 1 or 2");
  for (double g : {c.gx_t, c.gy_t, c.gz_t})
    if (!std::isfinite(g)) throw UsageError("contact phases must be finite");
  const CMatrix paulis[3] = {pauli_x(), pauli_y(), pauli_z()};
  const double weights[3] = {c.gx_t, c.gy_t, c.gz_t};
  const CMatrix eye2 = CMatrix::identity(2);
  CMatrix h(8, 8);
  for (int m = 0; m < 3; ++m) {
    const CMatrix on_target = impurity == 1 ? kron(paulis[m], eye2)
                                            : kron(eye2, paulis[m]);
    h = h + weights[m] * kron(on_target, paulis[m]);
  }
  return h;
}

CMatrix unpolarized() { return 0.5 * CMatrix::identity(2); }

CMatrix polarized(const CMatrix& axis) {
  return 0.5 * (CMatrix::identity(2) + axis);
}

}  // namespace

CMatrix spin_flip_unitary(const SpinCoupling& c, int impurity) {
  return expm_generator(coupling_generator(c, impurity), 1.0);
}

CMatrix cross_trace_closed_form(double gt) {
  if (!std::isfinite(gt)) throw UsageError("contact phase must be finite");
  const Complex amp = std::polar(1.0, -2.0 * gt) + std::cos(2.0 * gt);
  const double s2 = std::sin(2.0 * gt) * std::sin(2.0 * gt);
  const CMatrix paulis[3] = {pauli_x(), pauli_y(), pauli_z()};
  CMatrix dot(4, 4);
  for (const CMatrix& p : paulis) dot = dot + kron(p, p);
  return 0.5 * (std::norm(amp) * CMatrix::identity(4) + s2 * dot);
}

ProbeScenario ring_scenario(std::string name, const SpinCoupling& arm_a,
                            const SpinCoupling& arm_b, CMatrix rho_p,
                            CMatrix p_obs) {
  return make_scenario(std::move(name), spin_flip_unitary(arm_a, 1),
                       spin_flip_unitary(arm_b, 2), std::move(rho_p),
                       std::move(p_obs));
}

ProbeScenario isotropic_scenario(double gt) {
  return ring_scenario("spin-ring", SpinCoupling::isotropic(gt),
                       SpinCoupling::isotropic(gt), unpolarized(),
                       CMatrix::identity(2));
}

ProbeScenario singlet_scenario() {
  ProbeScenario s = isotropic_scenario(kQuarterTurn);
  s.name = "spin-singlet";
  return s;
}

ProbeScenario anisotropic_triplet_scenario(TripletVariant variant) {
  const double detuned =
      variant == TripletVariant::Stronger ? 3.0 * kQuarterTurn : -kQuarterTurn;
  const SpinCoupling arm_a{detuned, detuned, kQuarterTurn};
  return ring_scenario("spin-triplet-anisotropic", arm_a,
                       SpinCoupling::isotropic(kQuarterTurn), unpolarized(),
                       CMatrix::identity(2));
}

ProbeScenario effective_triplet_scenario() {
  return ring_scenario("spin-triplet-effective",
                       SpinCoupling::isotropic(kQuarterTurn),
                       SpinCoupling::isotropic(kQuarterTurn),
                       polarized(pauli_z()), pauli_z());
}

ProbeScenario rotated_phi_scenario(ProbeAxis axis) {
  const CMatrix p = axis == ProbeAxis::X ? pauli_x() : pauli_y();
  return ring_scenario("spin-phi-rotated",
                       SpinCoupling::isotropic(kQuarterTurn),
                       SpinCoupling::isotropic(kQuarterTurn), polarized(p), p);
}

}  // namespace probewit
