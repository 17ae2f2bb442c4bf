// SPDX-License-Identifier: Apache-2.0
#include "probewit/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "probewit/interference.hpp"
#include "probewit/photon_realization.hpp"
#include "probewit/qmath.hpp"
#include "probewit/spin_realization.hpp"
#include "probewit/states.hpp"

namespace probewit {
namespace {

constexpr double kPi = std::numbers::pi;

struct Part {
  double raw;
  double tol;
  std::string label;
};

// Accumulates the parts of one check and reports the binding one.
class Check {
 public:
  explicit Check(std::string name) : name_(std::move(name)) {}

  void part(double raw, double tol, std::string label) {
    parts_.push_back({raw, tol, std::move(label)});
  }
  void require(bool ok, std::string label) {
    part(ok ? 0.0 : 1.0, 0.5, std::move(label));
  }
  void annotate(std::string text) { annotation_ = std::move(text); }

  CheckResult finish() {
    CheckResult r;
    r.name = name_;
    r.pass = true;
    double worst = -1.0;
    for (const Part& p : parts_) {
      if (p.raw > p.tol) r.pass = false;
      const double ratio = p.raw / p.tol;
      if (ratio > worst) {
        worst = ratio;
        r.residual = p.raw;
        r.tolerance = p.tol;
        r.note = p.label;
      }
    }
    if (!annotation_.empty()) r.note += "; " + annotation_;
    return r;
  }

 private:
  std::string name_;
  std::vector<Part> parts_;
  std::string annotation_;
};

CMatrix pauli(int m) {
  switch (m) {
    case 0: return pauli_x();
    case 1: return pauli_y();
    default: return pauli_z();
  }
}

CMatrix on_first(const CMatrix& op) { return kron(op, CMatrix::identity(2)); }
CMatrix on_second(const CMatrix& op) { return kron(CMatrix::identity(2), op); }

DensityMatrix bell(BellKind kind) { return density_from_pure(bell_state(kind)); }

DensityMatrix maximally_mixed() {
  return make_density(0.25 * CMatrix::identity(4), two_qubit_layout());
}

double expectation(const CMatrix& m, const DensityMatrix& rho) {
  return trace(m * rho.op).real();
}

// kron(target factor on the impurity, probe factor), layout (q1, q2, probe).
CMatrix coupling_axis(int m, int impurity) {
  const CMatrix p = pauli(m);
  const CMatrix target = impurity == 1 ? on_first(p) : on_second(p);
  return kron(target, p);
}

// The ring arm in closed form:
//   T = (e^{i gt}/2) [ (e^{-2i gt} + cos 2gt) 1 - i sin(2gt) sigma.tau ].
CMatrix arm_closed_form(double gt, int impurity) {
  const Complex scale = 0.5 * std::polar(1.0, gt);
  const Complex diag = std::polar(1.0, -2.0 * gt) + std::cos(2.0 * gt);
  CMatrix t = (scale * diag) * CMatrix::identity(8);
  const Complex flip = scale * Complex(0.0, -1.0) * std::sin(2.0 * gt);
  for (int m = 0; m < 3; ++m) t = t + flip * coupling_axis(m, impurity);
  return t;
}

// Least-squares projection of m onto span{w, identity}: m ~ c w + d 1.
std::pair<double, double> affine_fit(const CMatrix& m, const CMatrix& w) {
  const CMatrix eye = CMatrix::identity(4);
  auto inner = [](const CMatrix& a, const CMatrix& b) {
    return trace(adjoint(a) * b).real();
  };
  const double a11 = inner(w, w);
  const double a12 = inner(w, eye);
  const double a22 = inner(eye, eye);
  const double b1 = inner(w, m);
  const double b2 = inner(eye, m);
  const double det = a11 * a22 - a12 * a12;
  return {(b1 * a22 - b2 * a12) / det, (a11 * b2 - a12 * b1) / det};
}

DensityMatrix random_product_mixture(std::mt19937_64& rng, int max_terms) {
  std::uniform_int_distribution<int> count(1, max_terms);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int terms = count(rng);
  std::vector<double> weights(terms);
  double total = 0.0;
  for (double& w : weights) {
    w = -std::log(1.0 - unit(rng));
    total += w;
  }
  CMatrix acc(4, 4);
  for (const double w : weights) {
    const BlochAngles a1{std::acos(1.0 - 2.0 * unit(rng)), 2.0 * kPi * unit(rng)};
    const BlochAngles a2{std::acos(1.0 - 2.0 * unit(rng)), 2.0 * kPi * unit(rng)};
    acc = acc + (w / total) * product_state(a1, a2).projector();
  }
  return make_density(acc, two_qubit_layout());
}

CMatrix random_matrix(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(dist(rng), dist(rng));
  return a;
}

CMatrix random_probe_state(std::mt19937_64& rng) {
  const CMatrix a = random_matrix(rng, 2);
  CMatrix rho = adjoint(a) * a;
  return (1.0 / trace(rho).real()) * rho;
}

ScatteringGeometry coincident_geometry(const Vec3& k_in, const Vec3& k_out) {
  return make_geometry(k_in, k_out, {1.0, 0.0, 0.0}, {0.0, 0.0, 0.0},
                       {0.0, 0.0, 0.0});
}

ProbeScenario perpendicular_young() {
  return young_scenario(coincident_geometry({1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}),
                        ProbePreparation::unpolarized(),
                        DetectionChannel::unanalyzed());
}

CheckResult check_closed_form_unitary(std::mt19937_64& rng) {
  Check c("spin.closed_form_unitary");
  std::uniform_real_distribution<double> angle(-2.0 * kPi, 2.0 * kPi);
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const double gt = angle(rng);
    for (const int impurity : {1, 2}) {
      const CMatrix spectral =
          spin_flip_unitary(SpinCoupling::isotropic(gt), impurity);
      worst = std::max(worst, max_abs_diff(spectral, arm_closed_form(gt, impurity)));
    }
  }
  c.part(worst, 1e-12, "arm unitary closed form vs spectral exponential, 50 couplings");
  return c.finish();
}

CheckResult check_cross_trace_identity(std::mt19937_64& rng) {
  Check c("spin.cross_trace_identity");
  const SpaceLayout layout = make_layout({2, 2, 2}, {"qubit1", "qubit2", "probe"});
  std::uniform_real_distribution<double> angle(-2.0 * kPi, 2.0 * kPi);
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const double gt = angle(rng);
    const CMatrix t_a = spin_flip_unitary(SpinCoupling::isotropic(gt), 1);
    const CMatrix t_b = spin_flip_unitary(SpinCoupling::isotropic(gt), 2);
    const CMatrix brute =
        partial_trace(adjoint(t_b) * t_a, layout, {"qubit1", "qubit2"});
    worst = std::max(worst, max_abs_diff(brute, cross_trace_closed_form(gt)));
  }
  c.part(worst, 1e-12, "probe trace of crossed arms vs closed form, 50 couplings");
  return c.finish();
}

CheckResult check_singlet_witness() {
  Check c("spin.singlet_witness");
  const CMatrix m = extract_observable(singlet_scenario());
  c.part(max_abs_diff(m, witness_w_minus()), 1e-10,
         "quarter-turn read-out equals the swap witness");
  c.part(std::abs(expectation(m, bell(BellKind::PsiMinus)) + 1.0), 1e-12,
         "expectation -1 on the singlet");
  return c.finish();
}

CheckResult check_anisotropic_triplet() {
  Check c("spin.anisotropic_triplet");
  c.part(max_abs_diff(
             extract_observable(anisotropic_triplet_scenario(TripletVariant::Stronger)),
             witness_w_plus()),
         1e-10, "three-quarter-turn detuning reads the exchange-plus witness");
  c.part(max_abs_diff(
             extract_observable(anisotropic_triplet_scenario(TripletVariant::Reversed)),
             witness_w_plus()),
         1e-10, "reversed detuning reads the exchange-plus witness");
  return c.finish();
}

CheckResult check_effective_triplet() {
  Check c("spin.effective_triplet");
  const CMatrix m = extract_observable(effective_triplet_scenario());
  const CMatrix expected =
      witness_w_plus() + 0.5 * (on_first(pauli_z()) + on_second(pauli_z()));
  c.part(max_abs_diff(m, expected), 1e-10, "closed form with field terms");
  c.part(std::abs(expectation(m, bell(BellKind::PsiPlus)) + 1.0), 1e-12,
         "expectation -1 on the plus state");
  c.part(std::abs(separable_minimum(m).value + 0.25), 1e-4,
         "separable floor -1/4");
  return c.finish();
}

CheckResult check_rotated_phi_witnesses() {
  Check c("spin.rotated_phi_witnesses");
  const CMatrix mx = extract_observable(rotated_phi_scenario(ProbeAxis::X));
  const CMatrix my = extract_observable(rotated_phi_scenario(ProbeAxis::Y));
  c.part(std::abs(expectation(mx, bell(BellKind::PhiMinus)) + 1.0), 1e-10,
         "x-axis probe reads -1 on the minus superposition of aligned pairs");
  c.part(std::abs(expectation(my, bell(BellKind::PhiPlus)) + 1.0), 1e-10,
         "y-axis probe reads -1 on the plus superposition of aligned pairs");
  c.part(std::abs(separable_minimum(mx).value + 0.25), 1e-4, "x-axis floor -1/4");
  c.part(std::abs(separable_minimum(my).value + 0.25), 1e-4, "y-axis floor -1/4");
  return c.finish();
}

CheckResult check_young_dyadic() {
  Check c("young.dyadic_formula");
  const double r3 = 1.0 / std::sqrt(3.0);
  const std::vector<Vec3> ins = {{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {r3, r3, r3}};
  const std::vector<Vec3> outs = {
      {0.0, 0.0, -1.0}, {0.0, 1.0, 0.0}, {1.0 / 3.0, -2.0 / 3.0, 2.0 / 3.0}};
  double worst = 0.0;
  for (const Vec3& ki : ins)
    for (const Vec3& ko : outs) {
      const ProbeScenario s =
          young_scenario(coincident_geometry(ki, ko),
                         ProbePreparation::unpolarized(), DetectionChannel::unanalyzed());
      worst = std::max(worst,
                       max_abs_diff(extract_observable(s), young_dyadic_form(ki, ko)));
    }
  c.part(worst, 1e-12, "read-out vs dyadic closed form on a 3x3 geometry grid");

  const CMatrix m = extract_observable(perpendicular_young());
  const auto [scale, offset] = affine_fit(m, witness_w_minus());
  const CMatrix resid =
      m - Complex(scale, 0.0) * witness_w_minus() - Complex(offset, 0.0) * CMatrix::identity(4);
  c.part(max_abs(resid), 1e-10, "perpendicular read-out is an affine swap witness");
  c.require(scale > 0.0, "positive swap scale");
  c.annotate("perpendicular scale " + std::to_string(scale));
  return c.finish();
}

CheckResult check_cbs_channels() {
  Check c("cbs.polarization_channels");
  const ScatteringGeometry back = backscatter_geometry();
  const CMatrix m_axis =
      extract_observable(cbs_scenario(DetectionChannel::linear(back.n_axis)));
  const CMatrix m_side = extract_observable(
      cbs_scenario(DetectionChannel::linear(cross(back.n_axis, back.k_in))));

  const auto [c_axis, d_axis] = affine_fit(m_axis, witness_w_plus());
  const CMatrix r_axis = m_axis - Complex(c_axis, 0.0) * witness_w_plus() -
                         Complex(d_axis, 0.0) * CMatrix::identity(4);
  c.part(max_abs(r_axis), 1e-10, "axis channel is an affine exchange-plus witness");
  c.require(c_axis > 0.0, "positive axis-channel scale");

  const auto [c_side, d_side] = affine_fit(m_side, witness_w_minus());
  const CMatrix r_side = m_side - Complex(c_side, 0.0) * witness_w_minus() -
                         Complex(d_side, 0.0) * CMatrix::identity(4);
  c.part(max_abs(r_side), 1e-10, "transverse channel is an affine swap witness");
  c.require(c_side > 0.0, "positive transverse-channel scale");

  const SeparableMinimum floor_axis = separable_minimum(m_axis);
  const SeparableMinimum floor_side = separable_minimum(m_side);
  const WitnessReport plus = witness_verdict(m_axis, bell(BellKind::PsiPlus), floor_axis);
  const WitnessReport minus = witness_verdict(m_side, bell(BellKind::PsiMinus), floor_side);
  c.require(plus.verdict, "axis channel flags the plus exchange state");
  c.require(minus.verdict, "transverse channel flags the singlet");
  c.annotate("margins " + std::to_string(plus.margin) + " and " +
             std::to_string(minus.margin));
  return c.finish();
}

CheckResult check_single_scattering_background() {
  Check c("cbs.single_scattering_background");
  const InterferencePattern mixed = single_scattering_background(maximally_mixed());
  c.part(std::abs(mixed.visibility - 0.5), 1e-10, "half contrast on the mixed pair");
  c.part(std::abs(mixed.alpha), 1e-10, "background peak at zero phase");
  c.part(single_scattering_background(bell(BellKind::PsiPlus)).visibility, 1e-10,
         "flat background on the plus exchange state");
  c.part(single_scattering_background(bell(BellKind::PsiMinus)).visibility, 1e-10,
         "flat background on the singlet");
  return c.finish();
}

CheckResult check_separable_soundness(std::mt19937_64& rng) {
  Check c("witness.separable_soundness");
  const auto start = std::chrono::steady_clock::now();

  struct Calibrated {
    std::string label;
    CMatrix m;
  };
  const std::vector<Calibrated> scenarios = {
      {"spin-singlet", extract_observable(singlet_scenario())},
      {"spin-triplet-effective", extract_observable(effective_triplet_scenario())},
      {"spin-phi-rotated-x", extract_observable(rotated_phi_scenario(ProbeAxis::X))},
      {"young-perpendicular", extract_observable(perpendicular_young())},
      {"cbs-axis",
       extract_observable(cbs_scenario(DetectionChannel::linear({1.0, 0.0, 0.0})))},
  };

  long tested = 0;
  int false_flags = 0;
  int unconfirmed = 0;
  for (const Calibrated& cal : scenarios) {
    const SeparableMinimum floor = separable_minimum(cal.m);
    for (int rep = 0; rep < 2000; ++rep) {
      const WitnessReport r =
          witness_verdict(cal.m, random_product_mixture(rng, 8), floor);
      ++tested;
      if (r.verdict) {
        ++false_flags;
        if (!r.ppt_verdict) ++unconfirmed;
      }
    }
    // Entangled probes keep the verdict-implies-transpose direction honest.
    for (const BellKind kind : {BellKind::PsiPlus, BellKind::PsiMinus,
                                BellKind::PhiPlus, BellKind::PhiMinus}) {
      const WitnessReport r = witness_verdict(cal.m, bell(kind), floor);
      if (r.verdict && !r.ppt_verdict) ++unconfirmed;
    }
    for (const double p : {0.2, 0.6, 0.95}) {
      const WitnessReport r = witness_verdict(cal.m, werner(p), floor);
      if (r.verdict && !r.ppt_verdict) ++unconfirmed;
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  c.part(static_cast<double>(false_flags), 0.5,
         "separable mixtures flagged out of " + std::to_string(tested));
  c.part(static_cast<double>(unconfirmed), 0.5,
         "verdicts lacking transpose confirmation");
  c.part(seconds, 60.0, "suite runtime in seconds");
  return c.finish();
}

CheckResult check_werner_sweep() {
  Check c("witness.werner_sweep");
  const CMatrix m = extract_observable(singlet_scenario());
  const SeparableMinimum floor = separable_minimum(m);
  double worst = 0.0;
  int first_verdict = -1;
  int first_ppt = -1;
  for (int i = 0; i <= 100; ++i) {
    const double p = 0.01 * i;
    const DensityMatrix rho = werner(p);
    worst = std::max(worst, std::abs(expectation(m, rho) - 0.5 * (1.0 - 3.0 * p)));
    const WitnessReport r = witness_verdict(m, rho, floor);
    if (r.verdict && first_verdict < 0) first_verdict = i;
    if (r.ppt_verdict && first_ppt < 0) first_ppt = i;
  }
  c.part(worst, 1e-10, "expectation matches (1-3p)/2 on 101 points");
  c.require(first_verdict > 0 && first_ppt > 0, "both boundaries inside the sweep");
  c.part(std::abs(first_verdict - first_ppt) * 0.01, 0.010001,
         "verdict and transpose boundaries coincide");
  c.part(std::abs(0.01 * first_verdict - 1.0 / 3.0), 0.010001,
         "verdict boundary sits at one third");
  return c.finish();
}

CheckResult check_fringe_consistency(std::mt19937_64& rng) {
  Check c("engine.fringe_consistency");
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  double worst_form = 0.0;
  double worst_fit = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const CMatrix obs_root = random_matrix(rng, 2);
    const ProbeScenario s =
        make_scenario("random", random_matrix(rng, 8), random_matrix(rng, 8),
                      random_probe_state(rng), adjoint(obs_root) * obs_root,
                      angle(rng));
    const DensityMatrix rho = random_density(rng(), 4, 4);
    const FringeCoefficients f = fringe_coefficients(s, rho);
    const InterferencePattern p = pattern_params(f);
    for (int i = 0; i < 25; ++i) {
      const double phi = -kPi + 2.0 * kPi * i / 25.0;
      const double conventional =
          p.i0 * (1.0 + p.visibility * std::cos(phi - p.alpha));
      worst_form = std::max(worst_form, std::abs(intensity(f, phi) - conventional));
    }

    std::vector<double> phis(73), values(73);
    for (int i = 0; i < 73; ++i) {
      phis[i] = -kPi + 2.0 * kPi * i / 72.0;
      values[i] = intensity(f, phis[i]);
    }
    const InterferencePattern fit = fit_pattern(phis, values);
    worst_fit = std::max(worst_fit, std::abs(fit.i0 - p.i0));
    // Compare in Cartesian fringe coefficients so a tiny visibility cannot
    // blow up the angle comparison.
    const double b_ref = p.i0 * p.visibility * std::cos(p.alpha);
    const double s_ref = p.i0 * p.visibility * std::sin(p.alpha);
    const double b_fit = fit.i0 * fit.visibility * std::cos(fit.alpha);
    const double s_fit = fit.i0 * fit.visibility * std::sin(fit.alpha);
    worst_fit = std::max({worst_fit, std::abs(b_fit - b_ref), std::abs(s_fit - s_ref)});
  }
  c.part(worst_form, 1e-9, "coefficient and conventional forms agree, 100 x 25 points");
  c.part(worst_fit, 1e-9, "noiseless samples refit to the same pattern");
  return c.finish();
}

CheckResult check_singlet_fringe_minimum() {
  Check c("spin.singlet_fringe_minimum");
  const FringeCoefficients f =
      fringe_coefficients(singlet_scenario(), bell(BellKind::PsiMinus));
  const int n = 73;
  const double step = 2.0 * kPi / (n - 1);
  double best_phi = 0.0;
  double best_value = 0.0;
  for (int i = 0; i < n; ++i) {
    const double phi = -kPi + step * i;
    const double value = intensity(f, phi);
    if (i == 0 || value < best_value) {
      best_value = value;
      best_phi = phi;
    }
  }
  c.part(std::abs(best_phi), step + 1e-12, "sampled fringe minimum at zero phase");
  c.require(best_value < f.background, "destructive dip below the background");
  return c.finish();
}

}  // namespace

std::vector<CheckResult> run_all_checks(std::uint64_t seed) {
  std::mt19937_64 master(seed);
  std::mt19937_64 rng_unitary(master());
  std::mt19937_64 rng_trace(master());
  std::mt19937_64 rng_soundness(master());
  std::mt19937_64 rng_fringe(master());

  std::vector<CheckResult> results;
  results.push_back(check_closed_form_unitary(rng_unitary));
  results.push_back(check_cross_trace_identity(rng_trace));
  results.push_back(check_singlet_witness());
  results.push_back(check_anisotropic_triplet());
  results.push_back(check_effective_triplet());
  results.push_back(check_rotated_phi_witnesses());
  results.push_back(check_young_dyadic());
  results.push_back(check_cbs_channels());
  results.push_back(check_single_scattering_background());
  results.push_back(check_separable_soundness(rng_soundness));
  results.push_back(check_werner_sweep());
  results.push_back(check_fringe_consistency(rng_fringe));
  results.push_back(check_singlet_fringe_minimum());
  return results;
}

}  // namespace probewit
