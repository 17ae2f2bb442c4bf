// SPDX-License-Identifier: Apache-2.0
#include "probewit/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace probewit {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr double kDefaultGt = std::numbers::pi / 4.0;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw UsageError("config: " + where + ": " + what);
}

void expect_object(const json& v, const std::string& where) {
  if (!v.is_object()) fail(where, "expected an object");
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key())) fail(where + "." + item.key(), "unknown key");
}

const json& need(const json& obj, const std::string& key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, "missing required key '" + key + "'");
  return *it;
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

int as_count(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

Vec3 as_vec3(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3) fail(where, "expected 3 components");
  Vec3 out{};
  for (int i = 0; i < 3; ++i) out[i] = as_number(v[i], where);
  return out;
}

Complex as_complex(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) fail(where, "expected a [re, im] pair");
  return {as_number(v[0], where), as_number(v[1], where)};
}

CVec3 as_cvec3(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3) fail(where, "expected 3 [re, im] pairs");
  CVec3 out{};
  for (int i = 0; i < 3; ++i) out[i] = as_complex(v[i], where);
  return out;
}

BlochAngles as_angles(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) fail(where, "expected [theta, phi]");
  return {as_number(v[0], where), as_number(v[1], where)};
}

BellKind bell_from_name(const std::string& name, const std::string& where) {
  if (name == "psi-plus") return BellKind::PsiPlus;
  if (name == "psi-minus") return BellKind::PsiMinus;
  if (name == "phi-plus") return BellKind::PhiPlus;
  if (name == "phi-minus") return BellKind::PhiMinus;
  fail(where, "unknown bell state '" + name + "'");
}

std::string bell_name(BellKind kind) {
  switch (kind) {
    case BellKind::PsiPlus: return "psi-plus";
    case BellKind::PsiMinus: return "psi-minus";
    case BellKind::PhiPlus: return "phi-plus";
    case BellKind::PhiMinus: return "phi-minus";
  }
  return "psi-minus";
}

TargetSpec parse_target(const json& v) {
  const std::string where = "target_state";
  expect_object(v, where);
  TargetSpec spec;
  const std::string kind = as_string(need(v, "kind", where), where + ".kind");
  if (kind == "bell") {
    reject_unknown(v, {"kind", "which"}, where);
    spec.kind = TargetSpec::Kind::Bell;
    spec.bell = bell_from_name(as_string(need(v, "which", where), where + ".which"),
                               where + ".which");
  } else if (kind == "werner") {
    reject_unknown(v, {"kind", "p"}, where);
    spec.kind = TargetSpec::Kind::Werner;
    spec.werner_p = as_number(need(v, "p", where), where + ".p");
    if (!(spec.werner_p >= 0.0 && spec.werner_p <= 1.0))
      fail(where + ".p", "must lie in [0, 1]");
  } else if (kind == "product") {
    reject_unknown(v, {"kind", "qubit1", "qubit2"}, where);
    spec.kind = TargetSpec::Kind::Product;
    spec.qubit1 = as_angles(need(v, "qubit1", where), where + ".qubit1");
    spec.qubit2 = as_angles(need(v, "qubit2", where), where + ".qubit2");
  } else if (kind == "matrix") {
    reject_unknown(v, {"kind", "entries"}, where);
    spec.kind = TargetSpec::Kind::Matrix;
    const json& rows = need(v, "entries", where);
    if (!rows.is_array() || rows.size() != 4)
      fail(where + ".entries", "expected 4 rows");
    spec.matrix = CMatrix(4, 4);
    for (int i = 0; i < 4; ++i) {
      const json& row = rows[i];
      if (!row.is_array() || row.size() != 4)
        fail(where + ".entries", "expected 4 entries per row");
      for (int j = 0; j < 4; ++j)
        spec.matrix(i, j) = as_complex(row[j], where + ".entries");
    }
  } else {
    fail(where + ".kind", "unknown target kind '" + kind + "'");
  }
  return spec;
}

SweepSpec parse_sweep(const json& v) {
  const std::string where = "sweep";
  expect_object(v, where);
  reject_unknown(v, {"parameter", "start", "stop", "points"}, where);
  SweepSpec sweep;
  sweep.parameter = as_string(need(v, "parameter", where), where + ".parameter");
  if (sweep.parameter != "werner-p" && sweep.parameter != "gt" &&
      sweep.parameter != "young-cos-angle")
    fail(where + ".parameter", "unknown sweep parameter '" + sweep.parameter + "'");
  sweep.start = as_number(need(v, "start", where), where + ".start");
  sweep.stop = as_number(need(v, "stop", where), where + ".stop");
  sweep.points = as_count(need(v, "points", where), where + ".points");
  if (sweep.points < 2) fail(where + ".points", "need at least 2 grid points");
  return sweep;
}

ProbePreparation parse_preparation(const json& v) {
  const std::string where = "params.preparation";
  expect_object(v, where);
  const std::string kind = as_string(need(v, "kind", where), where + ".kind");
  if (kind == "unpolarized") {
    reject_unknown(v, {"kind"}, where);
    return ProbePreparation::unpolarized();
  }
  if (kind == "pure") {
    reject_unknown(v, {"kind", "polarization"}, where);
    return ProbePreparation::pure(
        as_cvec3(need(v, "polarization", where), where + ".polarization"));
  }
  fail(where + ".kind", "unknown preparation '" + kind + "'");
}

DetectionChannel parse_channel(const json& v) {
  const std::string where = "params.channel";
  expect_object(v, where);
  const std::string kind = as_string(need(v, "kind", where), where + ".kind");
  if (kind == "unanalyzed") {
    reject_unknown(v, {"kind"}, where);
    return DetectionChannel::unanalyzed();
  }
  if (kind == "linear") {
    reject_unknown(v, {"kind", "direction"}, where);
    return DetectionChannel::linear(
        as_vec3(need(v, "direction", where), where + ".direction"));
  }
  fail(where + ".kind", "unknown channel '" + kind + "'");
}

void parse_geometry_fields(const json& params, ScatteringGeometry* geom,
                           const std::string& where) {
  if (params.contains("k_in")) geom->k_in = as_vec3(params["k_in"], where + ".k_in");
  if (params.contains("k_out"))
    geom->k_out = as_vec3(params["k_out"], where + ".k_out");
  if (params.contains("n_axis"))
    geom->n_axis = as_vec3(params["n_axis"], where + ".n_axis");
  if (params.contains("r1")) geom->r1 = as_vec3(params["r1"], where + ".r1");
  if (params.contains("r2")) geom->r2 = as_vec3(params["r2"], where + ".r2");
  if (params.contains("wavenumber")) {
    geom->wavenumber = as_number(params["wavenumber"], where + ".wavenumber");
  }
}

json vec3_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json cvec3_json(const CVec3& v) {
  json out = json::array();
  for (const Complex& c : v) out.push_back(json::array({c.real(), c.imag()}));
  return out;
}

}  // namespace

ScenarioConfig parse_config(const json& doc) {
  expect_object(doc, "document");
  reject_unknown(doc, {"schema_version", "realization", "params", "target_state", "sweep"},
                 "document");
  const int version = as_count(need(doc, "schema_version", "document"), "schema_version");
  if (version != 1) fail("schema_version", "unsupported version (expected 1)");

  ScenarioConfig cfg;
  cfg.realization = as_string(need(doc, "realization", "document"), "realization");

  json params = json::object();
  if (doc.contains("params")) {
    params = doc["params"];
    expect_object(params, "params");
  }

  if (cfg.realization == "spin-singlet") {
    reject_unknown(params, {"gt"}, "params");
    cfg.gt = params.contains("gt") ? as_number(params["gt"], "params.gt") : kDefaultGt;
  } else if (cfg.realization == "spin-triplet-anisotropic") {
    reject_unknown(params, {"variant"}, "params");
    std::string variant = "stronger";
    if (params.contains("variant"))
      variant = as_string(params["variant"], "params.variant");
    if (variant == "stronger") {
      cfg.variant = TripletVariant::Stronger;
    } else if (variant == "reversed") {
      cfg.variant = TripletVariant::Reversed;
    } else {
      fail("params.variant", "expected 'stronger' or 'reversed'");
    }
  } else if (cfg.realization == "spin-triplet-effective") {
    reject_unknown(params, {}, "params");
  } else if (cfg.realization == "spin-phi-rotated") {
    reject_unknown(params, {"axis"}, "params");
    const std::string axis = as_string(need(params, "axis", "params"), "params.axis");
    if (axis == "x") {
      cfg.axis = ProbeAxis::X;
    } else if (axis == "y") {
      cfg.axis = ProbeAxis::Y;
    } else {
      fail("params.axis", "expected 'x' or 'y'");
    }
  } else if (cfg.realization == "young") {
    reject_unknown(params,
                   {"k_in", "k_out", "n_axis", "r1", "r2", "wavenumber",
                    "preparation", "channel"},
                   "params");
    // Default arrangement: perpendicular scattering of an unpolarized,
    // unanalyzed beam, both atoms at the origin.
    cfg.geometry = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0},
                    {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, 1.0};
    parse_geometry_fields(params, &cfg.geometry, "params");
    cfg.preparation = params.contains("preparation")
                          ? parse_preparation(params["preparation"])
                          : ProbePreparation::unpolarized();
    cfg.channel = params.contains("channel") ? parse_channel(params["channel"])
                                             : DetectionChannel::unanalyzed();
  } else if (cfg.realization == "cbs") {
    reject_unknown(params,
                   {"channel", "k_in", "k_out", "n_axis", "r1", "r2", "wavenumber"},
                   "params");
    cfg.geometry = backscatter_geometry();
    parse_geometry_fields(params, &cfg.geometry, "params");
    cfg.cbs_channel = as_string(need(params, "channel", "params"), "params.channel");
    if (cfg.cbs_channel != "parallel-n" && cfg.cbs_channel != "perp-nk")
      fail("params.channel", "expected 'parallel-n' or 'perp-nk'");
  } else {
    fail("realization", "unknown realization '" + cfg.realization + "'");
  }

  cfg.target = parse_target(need(doc, "target_state", "document"));
  if (doc.contains("sweep")) cfg.sweep = parse_sweep(doc["sweep"]);
  return cfg;
}

ScenarioConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  return parse_config(doc);
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

ordered_json canonical_json(const ScenarioConfig& cfg) {
  ordered_json doc;
  doc["schema_version"] = 1;
  doc["realization"] = cfg.realization;

  ordered_json params = ordered_json::object();
  if (cfg.realization == "spin-singlet") {
    params["gt"] = cfg.gt;
  } else if (cfg.realization == "spin-triplet-anisotropic") {
    params["variant"] =
        cfg.variant == TripletVariant::Stronger ? "stronger" : "reversed";
  } else if (cfg.realization == "spin-phi-rotated") {
    params["axis"] = cfg.axis == ProbeAxis::X ? "x" : "y";
  } else if (cfg.realization == "young" || cfg.realization == "cbs") {
    if (cfg.realization == "cbs") params["channel"] = cfg.cbs_channel;
    params["k_in"] = vec3_json(cfg.geometry.k_in);
    params["k_out"] = vec3_json(cfg.geometry.k_out);
    params["n_axis"] = vec3_json(cfg.geometry.n_axis);
    params["r1"] = vec3_json(cfg.geometry.r1);
    params["r2"] = vec3_json(cfg.geometry.r2);
    params["wavenumber"] = cfg.geometry.wavenumber;
    if (cfg.realization == "young") {
      if (cfg.preparation.kind == ProbePreparation::Kind::Unpolarized) {
        params["preparation"] = {{"kind", "unpolarized"}};
      } else {
        params["preparation"] = {{"kind", "pure"},
                                 {"polarization", cvec3_json(cfg.preparation.polarization)}};
      }
      if (cfg.channel.kind == DetectionChannel::Kind::Unanalyzed) {
        params["channel"] = {{"kind", "unanalyzed"}};
      } else {
        params["channel"] = {{"kind", "linear"},
                             {"direction", vec3_json(cfg.channel.direction)}};
      }
    }
  }
  doc["params"] = params;

  ordered_json target;
  switch (cfg.target.kind) {
    case TargetSpec::Kind::Bell:
      target["kind"] = "bell";
      target["which"] = bell_name(cfg.target.bell);
      break;
    case TargetSpec::Kind::Werner:
      target["kind"] = "werner";
      target["p"] = cfg.target.werner_p;
      break;
    case TargetSpec::Kind::Product:
      target["kind"] = "product";
      target["qubit1"] = {cfg.target.qubit1.theta, cfg.target.qubit1.phi};
      target["qubit2"] = {cfg.target.qubit2.theta, cfg.target.qubit2.phi};
      break;
    case TargetSpec::Kind::Matrix: {
      target["kind"] = "matrix";
      ordered_json rows = ordered_json::array();
      for (int i = 0; i < 4; ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < 4; ++j) {
          const Complex& c = cfg.target.matrix(i, j);
          row.push_back({c.real(), c.imag()});
        }
        rows.push_back(row);
      }
      target["entries"] = rows;
      break;
    }
  }
  doc["target_state"] = target;

  if (cfg.sweep) {
    doc["sweep"] = {{"parameter", cfg.sweep->parameter},
                    {"start", cfg.sweep->start},
                    {"stop", cfg.sweep->stop},
                    {"points", cfg.sweep->points}};
  }
  return doc;
}

DensityMatrix build_target(const TargetSpec& spec) {
  switch (spec.kind) {
    case TargetSpec::Kind::Bell:
      return density_from_pure(bell_state(spec.bell));
    case TargetSpec::Kind::Werner:
      return werner(spec.werner_p);
    case TargetSpec::Kind::Product:
      return density_from_pure(product_state(spec.qubit1, spec.qubit2));
    case TargetSpec::Kind::Matrix:
      return make_density(spec.matrix, two_qubit_layout());
  }
  throw UsageError("config: target_state: unknown kind");
}

ProbeScenario build_scenario(const ScenarioConfig& cfg) {
  if (cfg.realization == "spin-singlet") {
    return cfg.gt == kDefaultGt ? singlet_scenario() : isotropic_scenario(cfg.gt);
  }
  if (cfg.realization == "spin-triplet-anisotropic")
    return anisotropic_triplet_scenario(cfg.variant);
  if (cfg.realization == "spin-triplet-effective") return effective_triplet_scenario();
  if (cfg.realization == "spin-phi-rotated") return rotated_phi_scenario(cfg.axis);

  const ScatteringGeometry geom =
      make_geometry(cfg.geometry.k_in, cfg.geometry.k_out, cfg.geometry.n_axis,
                    cfg.geometry.r1, cfg.geometry.r2, cfg.geometry.wavenumber);
  if (cfg.realization == "young")
    return young_scenario(geom, cfg.preparation, cfg.channel);
  if (cfg.realization == "cbs") {
    const Vec3 direction = cfg.cbs_channel == "parallel-n"
                               ? geom.n_axis
                               : normalized(cross(geom.n_axis, geom.k_in));
    return cbs_scenario(DetectionChannel::linear(direction), geom);
  }
  throw UsageError("config: realization: unknown realization '" + cfg.realization + "'");
}

}  // namespace probewit
