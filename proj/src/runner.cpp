// SPDX-License-Identifier: Apache-2.0
#include "probewit/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "probewit/verify.hpp"

namespace probewit {

using nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr const char* kToolVersion = "0.1.0";

// All CSV numbers go through one formatter so outputs are reproducible
// byte for byte and round-trip through double parsing.
std::string fmt(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::string fmt_svg(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw UsageError("failed while writing '" + path.string() + "'");
}

std::vector<double> phi_grid(int points) {
  if (points < 3) throw UsageError("fringe grid needs at least 3 points");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i)
    grid[i] = -kPi + 2.0 * kPi * static_cast<double>(i) / (points - 1);
  return grid;
}

ordered_json matrix_json(const CMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

ordered_json pattern_json(const InterferencePattern& p) {
  return {{"i0", p.i0}, {"visibility", p.visibility}, {"alpha", p.alpha}};
}

ordered_json witness_json(const WitnessReport& r) {
  return {{"m", matrix_json(r.m)},
          {"separable_min", r.separable_min},
          {"target_expectation", r.target_expectation},
          {"margin", r.margin},
          {"verdict", r.verdict},
          {"ppt_verdict", r.ppt_verdict}};
}

ordered_json base_report(const char* command, const ScenarioConfig& cfg,
                         const RunOptions& opt) {
  ordered_json doc;
  doc["tool"] = {{"name", "probewit"}, {"version", kToolVersion}};
  doc["command"] = command;
  doc["seed"] = opt.seed;
  doc["config"] = canonical_json(cfg);
  return doc;
}

void prepare_out_dir(const RunOptions& opt) {
  std::error_code ec;
  std::filesystem::create_directories(opt.out_dir, ec);
  if (ec) throw UsageError("cannot create output directory '" +
                           opt.out_dir.string() + "': " + ec.message());
}

std::string fringe_svg(const std::string& scenario,
                       const std::vector<double>& phis,
                       const std::vector<double>& values,
                       const InterferencePattern& pattern) {
  const double height = 440.0;
  const double left = 64.0, right = 700.0, top = 48.0, bottom = 392.0;
  double v_max = values.front(), v_min = values.front();
  for (const double v : values) {
    v_max = std::max(v_max, v);
    v_min = std::min(v_min, v);
  }
  v_min = std::min(0.0, v_min);
  if (v_max - v_min < 1e-12) v_max = v_min + 1.0;
  const double pad = 0.05 * (v_max - v_min);
  v_max += pad;

  auto x_of = [&](double phi) {
    return left + (phi + kPi) / (2.0 * kPi) * (right - left);
  };
  auto y_of = [&](double v) {
    return bottom - (v - v_min) / (v_max - v_min) * (bottom - top);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"440\" "
         "viewBox=\"0 0 720 440\">\n";
  svg += "<rect width=\"720\" height=\"440\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"64\" y=\"28\" font-family=\"sans-serif\" font-size=\"15\" "
         "fill=\"#1a1a1a\">" + scenario + " fringe:  i0 = " + fmt_svg(pattern.i0) +
         ",  visibility = " + fmt_svg(pattern.visibility) +
         ",  alpha = " + fmt_svg(pattern.alpha) + "</text>\n";

  // Axes.
  svg += "<line x1=\"" + fmt_svg(left) + "\" y1=\"" + fmt_svg(bottom) + "\" x2=\"" +
         fmt_svg(right) + "\" y2=\"" + fmt_svg(bottom) +
         "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fmt_svg(left) + "\" y1=\"" + fmt_svg(top) + "\" x2=\"" +
         fmt_svg(left) + "\" y2=\"" + fmt_svg(bottom) +
         "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";

  const char* tick_labels[5] = {"-\xcf\x80", "-\xcf\x80/2", "0", "\xcf\x80/2", "\xcf\x80"};
  for (int i = 0; i < 5; ++i) {
    const double phi = -kPi + i * kPi / 2.0;
    const double x = x_of(phi);
    svg += "<line x1=\"" + fmt_svg(x) + "\" y1=\"" + fmt_svg(bottom) + "\" x2=\"" +
           fmt_svg(x) + "\" y2=\"" + fmt_svg(bottom + 6.0) +
           "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fmt_svg(x) + "\" y=\"" + fmt_svg(bottom + 22.0) +
           "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#444444\" "
           "text-anchor=\"middle\">" + tick_labels[i] + "</text>\n";
  }
  for (const double v : {v_min, 0.5 * (v_min + v_max), v_max}) {
    const double y = y_of(v);
    svg += "<line x1=\"" + fmt_svg(left - 6.0) + "\" y1=\"" + fmt_svg(y) +
           "\" x2=\"" + fmt_svg(left) + "\" y2=\"" + fmt_svg(y) +
           "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fmt_svg(left - 10.0) + "\" y=\"" + fmt_svg(y + 4.0) +
           "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#444444\" "
           "text-anchor=\"end\">" + fmt_svg(v) + "</text>\n";
  }
  svg += "<text x=\"" + fmt_svg(0.5 * (left + right)) + "\" y=\"" +
         fmt_svg(height - 14.0) +
         "\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#1a1a1a\" "
         "text-anchor=\"middle\">external phase \xcf\x86</text>\n";

  // The verdict-carrying point phi = 0.
  svg += "<line x1=\"" + fmt_svg(x_of(0.0)) + "\" y1=\"" + fmt_svg(top) +
         "\" x2=\"" + fmt_svg(x_of(0.0)) + "\" y2=\"" + fmt_svg(bottom) +
         "\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"4 4\"/>\n";

  svg += "<polyline fill=\"none\" stroke=\"#0b6e99\" stroke-width=\"2\" points=\"";
  for (size_t i = 0; i < phis.size(); ++i) {
    if (i) svg += " ";
    svg += fmt_svg(x_of(phis[i])) + "," + fmt_svg(y_of(values[i]));
  }
  svg += "\"/>\n</svg>\n";
  return svg;
}

struct ScanRow {
  double value = 0.0;
  double expectation = 0.0;
  InterferencePattern pattern;
  bool verdict = false;
  bool ppt = false;
};

ScanRow make_row(double value, const ProbeScenario& scenario, const CMatrix& m,
                 const SeparableMinimum& floor, const DensityMatrix& target) {
  ScanRow row;
  row.value = value;
  row.pattern = pattern_params(scenario, target);
  const WitnessReport report = witness_verdict(m, target, floor);
  row.expectation = report.target_expectation;
  row.verdict = report.verdict;
  row.ppt = report.ppt_verdict;
  return row;
}

}  // namespace

int cmd_pattern(const ScenarioConfig& cfg, const RunOptions& opt) {
  const ProbeScenario scenario = build_scenario(cfg);
  const DensityMatrix target = build_target(cfg.target);
  const std::vector<double> phis = phi_grid(opt.grid);
  prepare_out_dir(opt);

  const FringeCoefficients f = fringe_coefficients(scenario, target);
  const InterferencePattern pattern = pattern_params(f);
  const WitnessReport report = witness_verdict(scenario, target);

  std::string csv = "phi,intensity\n";
  std::vector<double> values(phis.size());
  for (size_t i = 0; i < phis.size(); ++i) {
    values[i] = intensity(f, phis[i]);
    csv += fmt(phis[i]) + "," + fmt(values[i]) + "\n";
  }
  write_file(opt.out_dir / "fringe.csv", csv);

  ordered_json doc = base_report("pattern", cfg, opt);
  doc["scenario"] = scenario.name;
  doc["pattern"] = pattern_json(pattern);
  doc["witness"] = witness_json(report);
  doc["fringe"] = {{"points", opt.grid}, {"file", "fringe.csv"}};
  if (opt.svg) {
    write_file(opt.out_dir / "fringe.svg",
               fringe_svg(scenario.name, phis, values, pattern));
    doc["fringe"]["plot"] = "fringe.svg";
  }
  write_file(opt.out_dir / "report.json", doc.dump(2) + "\n");
  return 0;
}

int cmd_witness(const ScenarioConfig& cfg, const RunOptions& opt) {
  const ProbeScenario scenario = build_scenario(cfg);
  const DensityMatrix target = build_target(cfg.target);
  prepare_out_dir(opt);

  ordered_json doc = base_report("witness", cfg, opt);
  doc["scenario"] = scenario.name;
  doc["pattern"] = pattern_json(pattern_params(scenario, target));
  doc["witness"] = witness_json(witness_verdict(scenario, target));
  write_file(opt.out_dir / "report.json", doc.dump(2) + "\n");
  return 0;
}

int cmd_scan(const ScenarioConfig& cfg, const RunOptions& opt) {
  if (!cfg.sweep)
    throw UsageError("config: sweep: required for the scan command");
  const SweepSpec& sweep = *cfg.sweep;
  prepare_out_dir(opt);

  std::vector<ScanRow> rows;
  rows.reserve(sweep.points);
  auto grid_value = [&](int i) {
    return sweep.start +
           (sweep.stop - sweep.start) * (static_cast<double>(i) / (sweep.points - 1));
  };

  if (sweep.parameter == "werner-p") {
    if (sweep.start < 0.0 || sweep.start > 1.0 || sweep.stop < 0.0 || sweep.stop > 1.0)
      throw UsageError("config: sweep: werner-p range must stay in [0, 1]");
    const ProbeScenario scenario = build_scenario(cfg);
    const CMatrix m = extract_observable(scenario);
    const SeparableMinimum floor = separable_minimum(m);
    for (int i = 0; i < sweep.points; ++i) {
      const double p = grid_value(i);
      rows.push_back(make_row(p, scenario, m, floor, werner(p)));
    }
  } else if (sweep.parameter == "gt") {
    if (cfg.realization != "spin-singlet")
      throw UsageError("config: sweep: 'gt' sweeps the spin-singlet realization only");
    const DensityMatrix target = build_target(cfg.target);
    for (int i = 0; i < sweep.points; ++i) {
      const double gt = grid_value(i);
      const ProbeScenario scenario = isotropic_scenario(gt);
      const CMatrix m = extract_observable(scenario);
      rows.push_back(make_row(gt, scenario, m, separable_minimum(m), target));
    }
  } else if (sweep.parameter == "young-cos-angle") {
    if (cfg.realization != "young")
      throw UsageError("config: sweep: 'young-cos-angle' sweeps the young realization only");
    if (sweep.start < -1.0 || sweep.start > 1.0 || sweep.stop < -1.0 || sweep.stop > 1.0)
      throw UsageError("config: sweep: cosine range must stay in [-1, 1]");
    const DensityMatrix target = build_target(cfg.target);
    for (int i = 0; i < sweep.points; ++i) {
      const double c = grid_value(i);
      const Vec3 k_out{c, std::sqrt(std::max(0.0, 1.0 - c * c)), 0.0};
      const ScatteringGeometry geom =
          make_geometry({1.0, 0.0, 0.0}, k_out, {0.0, 0.0, 1.0}, {0.0, 0.0, 0.0},
                        {0.0, 0.0, 0.0}, cfg.geometry.wavenumber);
      const ProbeScenario scenario =
          young_scenario(geom, cfg.preparation, cfg.channel);
      const CMatrix m = extract_observable(scenario);
      rows.push_back(make_row(c, scenario, m, separable_minimum(m), target));
    }
  } else {
    throw UsageError("config: sweep.parameter: unknown parameter '" +
                     sweep.parameter + "'");
  }

  std::string csv = "parameter,target_expectation,visibility,alpha,verdict,ppt\n";
  for (const ScanRow& row : rows) {
    csv += fmt(row.value) + "," + fmt(row.expectation) + "," +
           fmt(row.pattern.visibility) + "," + fmt(row.pattern.alpha) + "," +
           (row.verdict ? "true" : "false") + "," + (row.ppt ? "true" : "false") +
           "\n";
  }
  write_file(opt.out_dir / "scan.csv", csv);

  ordered_json doc = base_report("scan", cfg, opt);
  doc["sweep"] = {{"parameter", sweep.parameter},
                  {"start", sweep.start},
                  {"stop", sweep.stop},
                  {"points", sweep.points}};
  doc["csv"] = "scan.csv";
  write_file(opt.out_dir / "report.json", doc.dump(2) + "\n");
  return 0;
}

int cmd_verify(std::uint64_t seed, std::ostream& out) {
  const std::vector<CheckResult> results = run_all_checks(seed);
  int failures = 0;
  for (const CheckResult& r : results) {
    if (!r.pass) ++failures;
    const ordered_json line = {{"name", r.name},
                               {"residual", r.residual},
                               {"tolerance", r.tolerance},
                               {"pass", r.pass},
                               {"note", r.note}};
    out << line.dump() << "\n";
  }
  const ordered_json summary = {{"suite", "verify"},
                                {"seed", seed},
                                {"checks", results.size()},
                                {"failures", failures}};
  out << summary.dump() << "\n";
  return failures == 0 ? 0 : 4;
}

}  // namespace probewit
