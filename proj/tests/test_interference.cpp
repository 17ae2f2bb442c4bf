// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "probewit/interference.hpp"
#include "probewit/qmath.hpp"
#include "probewit/states.hpp"

using namespace probewit;

namespace {

constexpr double kPi = std::numbers::pi;

CMatrix random_matrix(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(dist(rng), dist(rng));
  return a;
}

CMatrix random_hermitian(std::mt19937_64& rng, int n) {
  const CMatrix a = random_matrix(rng, n);
  return 0.5 * (a + adjoint(a));
}

CMatrix random_psd_observable(std::mt19937_64& rng, int n) {
  const CMatrix a = random_matrix(rng, n);
  return adjoint(a) * a;
}

CMatrix random_probe_state(std::mt19937_64& rng, int n) {
  CMatrix rho = random_psd_observable(rng, n);
  const double tr = trace(rho).real();
  return (1.0 / tr) * rho;
}

DensityMatrix random_target(std::mt19937_64& rng) {
  return random_density(rng(), 4, 4);
}

ProbeScenario random_scenario(std::mt19937_64& rng, bool psd_observable,
                              double phase_offset = 0.0) {
  return make_scenario("random", random_matrix(rng, 8), random_matrix(rng, 8),
                       random_probe_state(rng, 2),
                       psd_observable ? random_psd_observable(rng, 2)
                                      : random_hermitian(rng, 2),
                       phase_offset);
}

}  // namespace

TEST_CASE("transparent two-path setup gives a unit-visibility fringe") {
  // Both paths pass the joint state through untouched, and the detector
  // counts every probe. Each single path then has intensity 1, and the
  // two paths interfere perfectly: I(phi) = 2 + 2 cos(phi).
  const CMatrix eye8 = CMatrix::identity(8);
  const CMatrix half = 0.5 * CMatrix::identity(2);
  const ProbeScenario s =
      make_scenario("transparent", eye8, eye8, half, CMatrix::identity(2));
  CHECK(s.p_obs_psd);
  CHECK(s.probe_dim() == 2);

  const DensityMatrix target = density_from_pure(bell_state(BellKind::PsiMinus));
  const FringeCoefficients f = fringe_coefficients(s, target);
  CHECK(f.background == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(f.cross - Complex(1.0, 0.0)) < 1e-14);
  CHECK(intensity(f, 0.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(intensity(f, kPi) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

  const InterferencePattern p = pattern_params(f);
  CHECK(p.i0 == doctest::Approx(2.0));
  CHECK(p.visibility == doctest::Approx(1.0));
  CHECK(p.alpha == doctest::Approx(0.0).scale(1.0));

  // The fringe reads out twice the identity, for any target.
  const CMatrix m = extract_observable(s);
  CHECK(max_abs_diff(m, 2.0 * CMatrix::identity(4)) < 1e-14);
}

TEST_CASE("scenario validation rejects malformed inputs") {
  const CMatrix eye8 = CMatrix::identity(8);
  const CMatrix eye2 = CMatrix::identity(2);
  const CMatrix half = 0.5 * eye2;

  CHECK_THROWS_AS(make_scenario("bad", CMatrix::identity(4), eye8, half, eye2),
                  UsageError);
  CHECK_THROWS_AS(make_scenario("bad", eye8, eye8, half, CMatrix::identity(3)),
                  UsageError);
  // Probe state must be a density matrix.
  CHECK_THROWS_AS(make_scenario("bad", eye8, eye8, eye2, eye2), UsageError);
  CMatrix skew(2, 2);
  skew(0, 1) = Complex(0.0, 1.0);
  skew(1, 0) = Complex(0.0, 1.0);  // not Hermitian
  CHECK_THROWS_AS(make_scenario("bad", eye8, eye8, half, skew), UsageError);
  CMatrix negative = half;
  negative(0, 0) = Complex(1.5, 0.0);
  negative(1, 1) = Complex(-0.5, 0.0);
  CHECK_THROWS_AS(make_scenario("bad", eye8, eye8, negative, eye2), UsageError);
  CHECK_THROWS_AS(make_scenario("bad", eye8, eye8, half, eye2,
                                std::numeric_limits<double>::infinity()),
                  UsageError);

  // Indefinite observables are accepted but flagged.
  const ProbeScenario s = make_scenario("signed", eye8, eye8, half, pauli_z());
  CHECK_FALSE(s.p_obs_psd);
}

TEST_CASE("coefficient form and (i0, visibility, alpha) form agree everywhere") {
  std::mt19937_64 rng(2026);
  for (int rep = 0; rep < 100; ++rep) {
    const ProbeScenario s = random_scenario(rng, rep % 2 == 0);
    const DensityMatrix target = random_target(rng);
    const FringeCoefficients f = fringe_coefficients(s, target);
    const InterferencePattern p = pattern_params(f);
    for (int k = 0; k < 25; ++k) {
      const double phi = -kPi + 2.0 * kPi * k / 24.0;
      const double direct = intensity(f, phi);
      const double conventional =
          p.i0 * (1.0 + p.visibility * std::cos(phi - p.alpha));
      CHECK(direct == doctest::Approx(conventional).epsilon(1e-10).scale(
                          1.0 + std::abs(direct)));
    }
  }
}

TEST_CASE("visibility never exceeds one for a positive detector observable") {
  std::mt19937_64 rng(7341);
  for (int rep = 0; rep < 200; ++rep) {
    const ProbeScenario s = random_scenario(rng, true);
    const FringeCoefficients f = fringe_coefficients(s, random_target(rng));
    const InterferencePattern p = pattern_params(f);
    CHECK(p.visibility <= 1.0 + 1e-9);
    CHECK(p.visibility >= 0.0);
  }
}

TEST_CASE("an indefinite observable acts as the difference of two counters") {
  std::mt19937_64 rng(88321);
  for (int rep = 0; rep < 50; ++rep) {
    const CMatrix t_a = random_matrix(rng, 8);
    const CMatrix t_b = random_matrix(rng, 8);
    const CMatrix rho_p = random_probe_state(rng, 2);
    const CMatrix p_obs = random_hermitian(rng, 2);
    const DensityMatrix target = random_target(rng);

    const EigResult e = eig_hermitian(p_obs);
    CMatrix plus(2, 2), minus(2, 2);
    for (int a = 0; a < 2; ++a) {
      const double lam = e.values[a];
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const Complex term =
              e.vectors(i, a) * std::conj(e.vectors(j, a)) * std::abs(lam);
          if (lam >= 0.0)
            plus(i, j) += term;
          else
            minus(i, j) += term;
        }
    }

    const FringeCoefficients whole = fringe_coefficients(
        make_scenario("signed", t_a, t_b, rho_p, p_obs), target);
    const FringeCoefficients bright = fringe_coefficients(
        make_scenario("plus", t_a, t_b, rho_p, plus), target);
    const FringeCoefficients dark = fringe_coefficients(
        make_scenario("minus", t_a, t_b, rho_p, minus), target);
    CHECK(whole.background ==
          doctest::Approx(bright.background - dark.background).epsilon(1e-10));
    CHECK(std::abs(whole.cross - (bright.cross - dark.cross)) < 1e-9);
  }
}

TEST_CASE("pattern conventions: dark fringes and negative backgrounds") {
  FringeCoefficients dark;
  dark.background = 0.0;
  dark.cross = Complex(0.0, 0.0);
  const InterferencePattern pd = pattern_params(dark);
  CHECK(pd.i0 == 0.0);
  CHECK(pd.visibility == 0.0);
  CHECK(pd.alpha == 0.0);

  FringeCoefficients negative;
  negative.background = -2.0;
  negative.cross = Complex(0.4, 0.3);
  const InterferencePattern pn = pattern_params(negative);
  CHECK(pn.i0 == doctest::Approx(-2.0));
  CHECK(pn.visibility == doctest::Approx(0.5));
  // The conventional form must still reproduce the raw fringe.
  for (int k = 0; k < 25; ++k) {
    const double phi = 2.0 * kPi * k / 25.0;
    CHECK(intensity(negative, phi) ==
          doctest::Approx(pn.i0 * (1.0 + pn.visibility * std::cos(phi - pn.alpha)))
              .epsilon(1e-12));
  }
}

TEST_CASE("fitting samples of an exact fringe recovers its parameters") {
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int rep = 0; rep < 60; ++rep) {
    FringeCoefficients f;
    f.background = (rep % 3 == 0) ? -2.0 * std::abs(unit(rng)) - 0.5
                                  : 2.0 * std::abs(unit(rng)) + 0.5;
    f.cross = 0.4 * Complex(unit(rng), unit(rng)) * f.background;
    const InterferencePattern expected = pattern_params(f);

    std::vector<double> phi, obs;
    const int n = 3 + rep % 71;
    for (int k = 0; k < n; ++k) {
      const double x = -kPi + 2.0 * kPi * k / n + 0.1 * unit(rng);
      phi.push_back(x);
      obs.push_back(intensity(f, x));
    }
    const InterferencePattern got = fit_pattern(phi, obs);
    CHECK(got.i0 == doctest::Approx(expected.i0).epsilon(1e-9));
    CHECK(got.visibility == doctest::Approx(expected.visibility).epsilon(1e-9));
    CHECK(std::abs(wrap_angle(got.alpha - expected.alpha)) < 1e-8);
  }
}

TEST_CASE("fit rejects phase grids that cannot resolve a fringe") {
  CHECK_THROWS_AS(fit_pattern({0.0, 1.0}, {1.0, 2.0}), UsageError);
  CHECK_THROWS_AS(fit_pattern({0.0, 1.0, 2.0}, {1.0, 2.0}), UsageError);
  // Identical phases leave the basis functions indistinguishable.
  CHECK_THROWS_AS(fit_pattern({0.3, 0.3, 0.3, 0.3}, {1.0, 1.0, 1.0, 1.0}),
                  ContractError);
  // Two distinct phases cannot pin down three coefficients.
  CHECK_THROWS_AS(fit_pattern({0.0, kPi, 0.0, kPi}, {1.0, 2.0, 1.0, 2.0}),
                  ContractError);
  CHECK_THROWS_AS(
      fit_pattern({0.0, std::numeric_limits<double>::quiet_NaN(), 1.0},
                  {1.0, 2.0, 3.0}),
      UsageError);
}

TEST_CASE("the read-out operator reproduces the fringe for every target") {
  std::mt19937_64 rng(424242);
  for (int rep = 0; rep < 60; ++rep) {
    const double offset = (rep % 3 == 0) ? 0.0 : kPi * (2.0 * rep / 60.0 - 1.0);
    const ProbeScenario s = random_scenario(rng, rep % 2 == 0, offset);
    const CMatrix m = extract_observable(s);
    CHECK(is_hermitian(m, 1e-12));
    for (int t = 0; t < 3; ++t) {
      const DensityMatrix target = random_target(rng);
      const FringeCoefficients f = fringe_coefficients(s, target);
      const InterferencePattern p = pattern_params(f);
      const double lhs = trace(m * target.op).real();
      CHECK(lhs == doctest::Approx(2.0 * f.cross.real()).epsilon(1e-10).scale(1.0));
      CHECK(lhs ==
            doctest::Approx(p.i0 * p.visibility * std::cos(p.alpha))
                .epsilon(1e-9)
                .scale(1.0));
    }
  }
}

TEST_CASE("a fixed path phase shifts the fringe peak but not its contrast") {
  std::mt19937_64 rng(999);
  const CMatrix t_a = random_matrix(rng, 8);
  const CMatrix t_b = random_matrix(rng, 8);
  const CMatrix rho_p = random_probe_state(rng, 2);
  const CMatrix p_obs = random_psd_observable(rng, 2);
  const DensityMatrix target = random_target(rng);

  const InterferencePattern base = pattern_params(fringe_coefficients(
      make_scenario("base", t_a, t_b, rho_p, p_obs, 0.0), target));
  for (double offset : {0.7, -2.1, 3.0}) {
    const InterferencePattern shifted = pattern_params(fringe_coefficients(
        make_scenario("shifted", t_a, t_b, rho_p, p_obs, offset), target));
    CHECK(shifted.i0 == doctest::Approx(base.i0).epsilon(1e-12));
    CHECK(shifted.visibility == doctest::Approx(base.visibility).epsilon(1e-12));
    CHECK(std::abs(wrap_angle(shifted.alpha - base.alpha + offset)) < 1e-10);
  }
}

TEST_CASE("separable floor of reference operators") {
  // Bell-projector witnesses: product states overlap a Bell state by at
  // most 1/2, so 1 - 2|<Bell|a,b>|^2 reaches exactly 0 from above.
  const SeparableMinimum wm = separable_minimum(witness_w_minus());
  CHECK(wm.value == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  const SeparableMinimum wp = separable_minimum(witness_w_plus());
  CHECK(wp.value == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));

  const SeparableMinimum eye = separable_minimum(CMatrix::identity(4));
  CHECK(eye.value == doctest::Approx(1.0).epsilon(1e-12));

  // Adding half of (tau1^z + tau2^z) to the triplet witness tilts the
  // floor: minimizing cos^2(s) + cos(s)cos(d) over half-angle sums gives
  // -1/4 at cos(s) = -1/2.
  const CMatrix mz = witness_w_plus() +
                     0.5 * (kron(pauli_z(), CMatrix::identity(2)) +
                            kron(CMatrix::identity(2), pauli_z()));
  const SeparableMinimum tilted = separable_minimum(mz);
  CHECK(tilted.value == doctest::Approx(-0.25).epsilon(1e-9));
  CHECK(std::cos(tilted.qubit1.theta) == doctest::Approx(-0.5).epsilon(1e-5));
  CHECK(std::cos(tilted.qubit2.theta) == doctest::Approx(-0.5).epsilon(1e-5));
}

TEST_CASE("separable floor matches a brute-force grid on random operators") {
  std::mt19937_64 rng(31415);
  for (int rep = 0; rep < 8; ++rep) {
    const CMatrix m = random_hermitian(rng, 4);
    const SeparableMinimum found = separable_minimum(m);

    // Independent check: exhaustive midpoint grid, finer than the one the
    // optimizer seeds from, evaluated with a direct projector formula.
    double brute = 1e300;
    const int nt = 17, np = 31;
    for (int i1 = 0; i1 < nt; ++i1)
      for (int j1 = 0; j1 < np; ++j1)
        for (int i2 = 0; i2 < nt; ++i2)
          for (int j2 = 0; j2 < np; ++j2) {
            const PureState prod =
                product_state({(i1 + 0.5) * kPi / nt, j1 * 2.0 * kPi / np},
                              {(i2 + 0.5) * kPi / nt, j2 * 2.0 * kPi / np});
            const double val = trace(m * prod.projector()).real();
            brute = std::min(brute, val);
          }

    // The optimizer must do at least as well as the brute grid, and never
    // dip below the smallest eigenvalue (the unconstrained floor).
    CHECK(found.value <= brute + 1e-9);
    CHECK(found.value >= eig_hermitian(m).values.front() - 1e-9);

    // The reported angles must actually achieve the reported value.
    const PureState at = product_state(found.qubit1, found.qubit2);
    CHECK(trace(m * at.projector()).real() ==
          doctest::Approx(found.value).epsilon(1e-10).scale(1.0));

    // Swapping the two target qubits relabels the search space only.
    CMatrix swapped(4, 4);
    for (int i1 = 0; i1 < 2; ++i1)
      for (int i2 = 0; i2 < 2; ++i2)
        for (int j1 = 0; j1 < 2; ++j1)
          for (int j2 = 0; j2 < 2; ++j2)
            swapped(2 * i1 + i2, 2 * j1 + j2) = m(2 * i2 + i1, 2 * j2 + j1);
    CHECK(separable_minimum(swapped).value ==
          doctest::Approx(found.value).epsilon(1e-7).scale(1.0));
  }
}

TEST_CASE("witness verdicts separate Bell states from the mixed state") {
  const CMatrix wm = witness_w_minus();
  const SeparableMinimum floor = separable_minimum(wm);

  const WitnessReport singlet =
      witness_verdict(wm, density_from_pure(bell_state(BellKind::PsiMinus)), floor);
  CHECK(singlet.target_expectation == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(singlet.margin == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(singlet.verdict);
  // The transpose test must back up every positive verdict.
  CHECK(singlet.ppt_verdict);
  CHECK(max_abs_diff(singlet.m, wm) == 0.0);

  DensityMatrix mixed = make_density(0.25 * CMatrix::identity(4), two_qubit_layout());
  const WitnessReport flat = witness_verdict(wm, mixed, floor);
  CHECK(flat.target_expectation == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(flat.margin == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK_FALSE(flat.verdict);
  CHECK_FALSE(flat.ppt_verdict);

  // The one-argument overload recomputes the floor and agrees.
  const WitnessReport redo = witness_verdict(wm, mixed);
  CHECK(redo.margin == doctest::Approx(flat.margin).epsilon(1e-9));

  // Werner states cross the detection threshold at p = 1/3.
  const WitnessReport below = witness_verdict(wm, werner(0.30), floor);
  CHECK_FALSE(below.verdict);
  const WitnessReport above = witness_verdict(wm, werner(0.36), floor);
  CHECK(above.verdict);
}
