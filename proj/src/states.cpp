// SPDX-License-Identifier: Apache-2.0

#include "probewit/states.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace probewit {

SpaceLayout two_qubit_layout() { return make_layout({2, 2}, {"qubit1", "qubit2"}); }

CMatrix PureState::projector() const {
  const int n = static_cast<int>(amps.size());
  CMatrix p(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i, j) = amps[i] * std::conj(amps[j]);
  return p;
}

DensityMatrix make_density(CMatrix op, SpaceLayout layout) {
  const int n = layout.dim();
  if (op.rows() != n || op.cols() != n)
    throw UsageError("make_density: matrix does not match layout dimension");
  ensure_finite(op, "make_density");
  if (!is_hermitian(op, 1e-12)) throw ContractError("make_density: matrix not Hermitian");
  if (std::abs(trace(op) - Complex(1.0, 0.0)) > 1e-12)
    throw ContractError("make_density: trace differs from one");
  const EigResult e = eig_hermitian(op);
  if (e.values.front() < -1e-10)
    throw ContractError("make_density: matrix has a negative eigenvalue");
  return DensityMatrix{std::move(op), std::move(layout)};
}

DensityMatrix density_from_pure(const PureState& psi) {
  double norm2 = 0.0;
  for (const Complex& a : psi.amps) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > 1e-12) throw ContractError("density_from_pure: state not normalized");
  return DensityMatrix{psi.projector(), psi.layout};
}

PureState bell_state(BellKind kind) {
  const double r = 1.0 / std::sqrt(2.0);
  PureState s;
  s.layout = two_qubit_layout();
  s.amps.assign(4, Complex(0.0, 0.0));
  switch (kind) {
    case BellKind::PsiPlus:
      s.amps[1] = r;
      s.amps[2] = r;
      break;
    case BellKind::PsiMinus:
      s.amps[1] = r;
      s.amps[2] = -r;
      break;
    case BellKind::PhiPlus:
      s.amps[0] = r;
      s.amps[3] = r;
      break;
    case BellKind::PhiMinus:
      s.amps[0] = r;
      s.amps[3] = -r;
      break;
  }
  return s;
}

CMatrix witness_w_minus() {
  return CMatrix::identity(4) - 2.0 * bell_state(BellKind::PsiMinus).projector();
}

CMatrix witness_w_plus() {
  return CMatrix::identity(4) - 2.0 * bell_state(BellKind::PsiPlus).projector();
}

DensityMatrix werner(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw UsageError("werner: p must lie in [0, 1]");
  const CMatrix singlet = bell_state(BellKind::PsiMinus).projector();
  const CMatrix op =
      Complex(p, 0.0) * singlet + Complex((1.0 - p) / 4.0, 0.0) * CMatrix::identity(4);
  return make_density(op, two_qubit_layout());
}

static void require_bloch(const BlochAngles& a, const char* who) {
  if (!(a.theta >= -1e-12 && a.theta <= std::numbers::pi + 1e-12))
    throw UsageError(std::string(who) + ": theta outside [0, pi]");
  if (!std::isfinite(a.phi)) throw UsageError(std::string(who) + ": phi not finite");
}

PureState product_state(const BlochAngles& a1, const BlochAngles& a2) {
  require_bloch(a1, "product_state");
  require_bloch(a2, "product_state");
  auto qubit = [](const BlochAngles& a) {
    const double theta = std::clamp(a.theta, 0.0, std::numbers::pi);
    const double phi = a.phi - 2.0 * std::numbers::pi * std::floor(a.phi / (2.0 * std::numbers::pi));
    return std::array<Complex, 2>{Complex(std::cos(theta / 2.0), 0.0),
                                  std::polar(std::sin(theta / 2.0), phi)};
  };
  const auto q1 = qubit(a1);
  const auto q2 = qubit(a2);
  PureState s;
  s.layout = two_qubit_layout();
  s.amps = {q1[0] * q2[0], q1[0] * q2[1], q1[1] * q2[0], q1[1] * q2[1]};
  return s;
}

DensityMatrix random_density(std::uint64_t seed, int dim, int rank) {
  if (dim < 1 || dim > kMaxDim) throw UsageError("random_density: bad dimension");
  if (rank < 1 || rank > dim) throw UsageError("random_density: rank must lie in [1, dim]");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> psi(static_cast<size_t>(dim) * rank);
  double norm2 = 0.0;
  for (Complex& a : psi) {
    a = Complex(g(rng), g(rng));
    norm2 += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(norm2);

  // Trace out the rank-sized ancilla of the normalized pure state.
  CMatrix op(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      Complex s = 0.0;
      for (int a = 0; a < rank; ++a)
        s += psi[static_cast<size_t>(i) * rank + a] * std::conj(psi[static_cast<size_t>(j) * rank + a]);
      op(i, j) = s * scale * scale;
    }

  SpaceLayout layout = dim == 4 ? two_qubit_layout() : make_layout({dim}, {"system"});
  return make_density(std::move(op), std::move(layout));
}

PptResult ppt_check(const DensityMatrix& rho) {
  if (rho.layout.factors != std::vector<int>{2, 2})
    throw UsageError("ppt_check: requires a two-qubit [2,2] layout");
  // Transpose the second factor: (i1 i2),(j1 j2) -> (i1 j2),(j1 i2).
  CMatrix pt(4, 4);
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2)
          pt(2 * i1 + j2, 2 * j1 + i2) = rho.op(2 * i1 + i2, 2 * j1 + j2);
  const EigResult e = eig_hermitian(pt);
  return PptResult{e.values.front() < -1e-10, e.values.front()};
}

}  // namespace probewit
