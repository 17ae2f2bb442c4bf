// SPDX-License-Identifier: Apache-2.0
#include "probewit/interference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace probewit {

namespace {

void check_density_like(const CMatrix& rho, const char* what) {
  if (!is_hermitian(rho, 1e-12)) throw UsageError(std::string(what) + " must be Hermitian");
  if (std::abs(trace(rho).real() - 1.0) > 1e-12)
    throw UsageError(std::string(what) + " must have unit trace");
  const EigResult e = eig_hermitian(rho);
  if (e.values.front() < -1e-10)
    throw UsageError(std::string(what) + " must be positive semidefinite");
}

}  // namespace

ProbeScenario make_scenario(std::string name, CMatrix t_a, CMatrix t_b,
                            CMatrix rho_p, CMatrix p_obs, double phase_offset) {
  const int d = rho_p.rows();
  if (d < 1 || rho_p.cols() != d) throw UsageError("probe state must be square");
  if (p_obs.rows() != d || p_obs.cols() != d)
    throw UsageError("probe observable must match the probe dimension");
  const int full = 4 * d;
  if (full > kMaxDim) throw UsageError("probe dimension too large for the joint space");
  if (t_a.rows() != full || t_a.cols() != full || t_b.rows() != full || t_b.cols() != full)
    throw UsageError("path operators must act on the joint target+probe space");
  ensure_finite(t_a, "path operator A");
  ensure_finite(t_b, "path operator B");
  ensure_finite(rho_p, "probe state");
  ensure_finite(p_obs, "probe observable");
  if (!std::isfinite(phase_offset)) throw UsageError("phase offset must be finite");
  check_density_like(rho_p, "probe state");
  if (!is_hermitian(p_obs, 1e-12)) throw UsageError("probe observable must be Hermitian");

  ProbeScenario s;
  s.name = std::move(name);
  s.t_a = std::move(t_a);
  s.t_b = std::move(t_b);
  s.rho_p = std::move(rho_p);
  s.p_obs = std::move(p_obs);
  s.layout = make_layout({2, 2, d}, {"qubit1", "qubit2", "probe"});
  s.phase_offset = phase_offset;
  s.p_obs_psd = eig_hermitian(s.p_obs).values.front() >= -1e-10;
  return s;
}

FringeCoefficients fringe_coefficients(const ProbeScenario& scenario,
                                       const DensityMatrix& target) {
  if (target.layout.dim() != 4) throw UsageError("target must be a two-qubit state");
  const CMatrix rho_full = kron(target.op, scenario.rho_p);
  const CMatrix p_full = kron(CMatrix::identity(4), scenario.p_obs);
  const CMatrix pa = adjoint(scenario.t_a) * (p_full * scenario.t_a);
  const CMatrix pb = adjoint(scenario.t_b) * (p_full * scenario.t_b);
  const CMatrix pba = adjoint(scenario.t_b) * (p_full * scenario.t_a);

  FringeCoefficients f;
  f.background = trace(rho_full * (pa + pb)).real();
  f.cross = std::polar(1.0, scenario.phase_offset) * trace(rho_full * pba);
  return f;
}

double intensity(const FringeCoefficients& f, double phi) {
  return f.background + 2.0 * (std::polar(1.0, phi) * f.cross).real();
}

double intensity(const ProbeScenario& scenario, const DensityMatrix& target,
                 double phi) {
  return intensity(fringe_coefficients(scenario, target), phi);
}

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

InterferencePattern pattern_params(const FringeCoefficients& f) {
  InterferencePattern p;
  p.i0 = f.background;
  if (std::abs(f.background) <= 1e-12) {
    // Dark pattern: with no mean signal the contrast is undefined, so
    // report a flat fringe instead of dividing by zero.
    return p;
  }
  const Complex c = 2.0 * f.cross;
  p.visibility = std::abs(c) / std::abs(f.background);
  double alpha = -std::arg(c);
  // A negative background flips the apparent fringe: keep visibility
  // nonnegative and shift the peak phase by half a period instead.
  if (f.background < 0.0) alpha += std::numbers::pi;
  p.alpha = wrap_angle(alpha);
  return p;
}

InterferencePattern pattern_params(const ProbeScenario& scenario,
                                   const DensityMatrix& target) {
  return pattern_params(fringe_coefficients(scenario, target));
}

InterferencePattern fit_pattern(const std::vector<double>& phi,
                                const std::vector<double>& observed) {
  if (phi.size() != observed.size())
    throw UsageError("fit needs one intensity per phase sample");
  if (phi.size() < 3) throw UsageError("fit needs at least three samples");

  // Normal equations for least squares on the basis {1, cos, sin}.
  double g[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  double rhs[3] = {0, 0, 0};
  for (std::size_t k = 0; k < phi.size(); ++k) {
    if (!std::isfinite(phi[k]) || !std::isfinite(observed[k]))
      throw UsageError("fit samples must be finite");
    const double row[3] = {1.0, std::cos(phi[k]), std::sin(phi[k])};
    for (int i = 0; i < 3; ++i) {
      rhs[i] += row[i] * observed[k];
      for (int j = 0; j < 3; ++j) g[i][j] += row[i] * row[j];
    }
  }

  // Gaussian elimination with partial pivoting on the 3x3 system.
  const double pivot_floor = 1e-9 * static_cast<double>(phi.size());
  int perm[3] = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int best = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(g[perm[r]][col]) > std::abs(g[perm[best]][col])) best = r;
    std::swap(perm[col], perm[best]);
    const double piv = g[perm[col]][col];
    if (std::abs(piv) < pivot_floor)
      throw ContractError("phase samples do not determine a fringe");
    for (int r = col + 1; r < 3; ++r) {
      const double factor = g[perm[r]][col] / piv;
      for (int c2 = col; c2 < 3; ++c2) g[perm[r]][c2] -= factor * g[perm[col]][c2];
      rhs[perm[r]] -= factor * rhs[perm[col]];
    }
  }
  double sol[3];
  for (int col = 2; col >= 0; --col) {
    double acc = rhs[perm[col]];
    for (int c2 = col + 1; c2 < 3; ++c2) acc -= g[perm[col]][c2] * sol[c2];
    sol[col] = acc / g[perm[col]][col];
  }

  FringeCoefficients f;
  f.background = sol[0];
  f.cross = Complex(0.5 * sol[1], -0.5 * sol[2]);
  return pattern_params(f);
}

CMatrix extract_observable(const ProbeScenario& scenario) {
  const CMatrix p_full = kron(CMatrix::identity(4), scenario.p_obs);
  const CMatrix x = std::polar(1.0, scenario.phase_offset) *
                    (adjoint(scenario.t_b) * (p_full * scenario.t_a));
  const CMatrix weighted = kron(CMatrix::identity(4), scenario.rho_p) * (x + adjoint(x));
  const CMatrix m = partial_trace(weighted, scenario.layout, {"qubit1", "qubit2"});
  return 0.5 * (m + adjoint(m));
}

namespace {

// tr(m |a><a| x |b><b|) for Bloch angles packed as
// {theta1, phi1, theta2, phi2}.
double product_expectation(const CMatrix& m, const double* a) {
  const Complex q1[2] = {Complex(std::cos(0.5 * a[0]), 0.0),
                         std::polar(std::sin(0.5 * a[0]), a[1])};
  const Complex q2[2] = {Complex(std::cos(0.5 * a[2]), 0.0),
                         std::polar(std::sin(0.5 * a[2]), a[3])};
  Complex v[4];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) v[2 * i + j] = q1[i] * q2[j];
  Complex acc{0.0, 0.0};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) acc += std::conj(v[i]) * m(i, j) * v[j];
  return acc.real();
}

}  // namespace

SeparableMinimum separable_minimum(const CMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4) throw UsageError("witness must be 4x4");
  ensure_finite(m, "witness");
  if (!is_hermitian(m, 1e-10)) throw UsageError("witness must be Hermitian");
  const CMatrix mh = 0.5 * (m + adjoint(m));

  constexpr int kThetaCells = 12;
  constexpr int kPhiCells = 24;
  constexpr int kSeeds = 5;
  const double pi = std::numbers::pi;
  long evals = 0;

  const auto eval = [&](const double* a) {
    ++evals;
    return product_expectation(mh, a);
  };

  // Midpoint grid over both Bloch spheres; keep the best few cells as
  // starting points so distinct local basins all get refined.
  struct Seed {
    double value;
    double a[4];
  };
  std::vector<Seed> seeds;
  seeds.reserve(kSeeds + 1);
  for (int i1 = 0; i1 < kThetaCells; ++i1)
    for (int j1 = 0; j1 < kPhiCells; ++j1)
      for (int i2 = 0; i2 < kThetaCells; ++i2)
        for (int j2 = 0; j2 < kPhiCells; ++j2) {
          const double a[4] = {(i1 + 0.5) * pi / kThetaCells,
                               j1 * 2.0 * pi / kPhiCells,
                               (i2 + 0.5) * pi / kThetaCells,
                               j2 * 2.0 * pi / kPhiCells};
          const double val = eval(a);
          if (seeds.size() < kSeeds || val < seeds.back().value) {
            Seed s{val, {a[0], a[1], a[2], a[3]}};
            const auto pos = std::upper_bound(
                seeds.begin(), seeds.end(), val,
                [](double lhs, const Seed& rhs) { return lhs < rhs.value; });
            seeds.insert(pos, s);
            if (seeds.size() > kSeeds) seeds.pop_back();
          }
        }

  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  const auto line_min = [&](double a[4], int coord, double lo, double hi) {
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    const auto probe = [&](double x) {
      double b[4] = {a[0], a[1], a[2], a[3]};
      b[coord] = x;
      return eval(b);
    };
    double f1 = probe(x1);
    double f2 = probe(x2);
    for (int it = 0; it < 40 && hi - lo > 1e-12; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - invphi * (hi - lo);
        f1 = probe(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + invphi * (hi - lo);
        f2 = probe(x2);
      }
    }
    a[coord] = 0.5 * (lo + hi);
    return probe(a[coord]);
  };

  SeparableMinimum best;
  best.value = seeds.front().value;
  best.qubit1 = {seeds.front().a[0], seeds.front().a[1]};
  best.qubit2 = {seeds.front().a[2], seeds.front().a[3]};

  for (const Seed& seed : seeds) {
    double a[4] = {seed.a[0], seed.a[1], seed.a[2], seed.a[3]};
    double value = seed.value;
    // Cyclic coordinate descent with a shrinking trust window.
    for (double w = pi / kThetaCells; w >= 1e-6; w *= 0.5) {
      for (int coord = 0; coord < 4; ++coord) {
        double lo = a[coord] - w;
        double hi = a[coord] + w;
        if (coord == 0 || coord == 2) {
          lo = std::max(lo, 0.0);
          hi = std::min(hi, pi);
        }
        value = line_min(a, coord, lo, hi);
      }
    }
    if (value < best.value) {
      best.value = value;
      best.qubit1 = {a[0], wrap_angle(a[1])};
      best.qubit2 = {a[2], wrap_angle(a[3])};
    }
  }
  if (best.qubit1.phi < 0.0) best.qubit1.phi += 2.0 * pi;
  if (best.qubit2.phi < 0.0) best.qubit2.phi += 2.0 * pi;
  best.evaluations = evals;
  return best;
}

WitnessReport witness_verdict(const CMatrix& m, const DensityMatrix& target,
                              const SeparableMinimum& floor) {
  WitnessReport r;
  r.m = m;
  r.target_expectation = trace(m * target.op).real();
  r.separable_min = floor.value;
  r.margin = r.separable_min - r.target_expectation;
  r.verdict = r.target_expectation < r.separable_min - kDecisionTolerance;
  r.ppt_verdict = ppt_check(target).entangled;
  return r;
}

WitnessReport witness_verdict(const CMatrix& m, const DensityMatrix& target) {
  return witness_verdict(m, target, separable_minimum(m));
}

WitnessReport witness_verdict(const ProbeScenario& scenario,
                              const DensityMatrix& target) {
  return witness_verdict(extract_observable(scenario), target);
}

}  // namespace probewit
