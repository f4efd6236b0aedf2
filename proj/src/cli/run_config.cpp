#include "cli/run_config.hpp"

#include <map>

#include "json.hpp"
#include "talbot/constants.hpp"
#include "talbot/errors.hpp"

namespace talbot::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw config_error("config field '" + where + "': " + what);
}

double require_num(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) fail(where + "." + key, "missing");
  if (!j[key].is_number()) fail(where + "." + key, "must be a number");
  return j[key].get<double>();
}

double optional_num(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  return j[key].get<double>();
}

int require_int(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number_integer())
    fail(where + "." + key, "missing or not an integer");
  return j[key].get<int>();
}

std::string require_str(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_string()) fail(where + "." + key, "missing or not a string");
  return j[key].get<std::string>();
}

VelocityDist parse_velocity(const json& j, const std::string& where) {
  const std::string kind = require_str(j, "kind", where);
  if (kind == "delta") return VelocityDist::delta(require_num(j, "v0_m_per_s", where));
  if (kind == "gaussian")
    return VelocityDist::gaussian(require_num(j, "v0_m_per_s", where),
                                  require_num(j, "fwhm_m_per_s", where));
  if (kind == "tabulated") {
    if (!j.contains("values") || !j["values"].is_array()) fail(where + ".values", "missing array");
    std::vector<std::pair<double, double>> table;
    for (const auto& row : j["values"]) {
      if (!row.is_array() || row.size() != 2) fail(where + ".values", "rows must be [v, weight]");
      table.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    return VelocityDist::tabulated(std::move(table));
  }
  fail(where + ".kind", "unknown velocity kind '" + kind + "'");
}

ParticleSpec parse_particle(const json& j) {
  ParticleSpec p;
  p.mass = require_num(j, "mass_u", "particle") * constants.amu;
  p.alpha_opt = optional_num(j, "alpha_opt_C_m2_per_V", 0.0);
  p.sigma_abs = optional_num(j, "sigma_abs_m2", 0.0);
  p.alpha_stat = optional_num(j, "alpha_stat_C_m2_per_V", 0.0);
  p.dipole_sq_mean = optional_num(j, "dipole_sq_mean_C2_m2", 0.0);
  if (!j.contains("velocity")) fail("particle.velocity", "missing");
  p.velocity_dist = parse_velocity(j["velocity"], "particle.velocity");
  p.validate();
  return p;
}

GratingSpec parse_grating(const json& j, const std::string& where) {
  const std::string kind = require_str(j, "kind", where);
  const double d = require_num(j, "period_m", where);
  if (kind == "material_mask")
    return GratingSpec::material_mask(d, require_num(j, "open_fraction", where));
  if (kind == "phase") return GratingSpec::phase(d, require_num(j, "phi0", where));
  if (kind == "ionizing")
    return GratingSpec::ionizing(d, optional_num(j, "phi0", 0.0), require_num(j, "n0", where));
  fail(where + ".kind", "unknown grating kind '" + kind + "'");
}

InterferometerConfig parse_interferometer(const json& root) {
  if (!root.contains("gratings") || !root["gratings"].is_array() || root["gratings"].size() != 3)
    fail("gratings", "must be an array of three gratings");
  const json& j = root["interferometer"];
  InterferometerConfig c;
  const std::string scheme = require_str(j, "scheme", "interferometer");
  const std::map<std::string, Scheme> schemes{
      {"tl", Scheme::tl}, {"kdtli", Scheme::kdtli}, {"otima", Scheme::otima}};
  const auto it = schemes.find(scheme);
  if (it == schemes.end()) fail("interferometer.scheme", "unknown scheme '" + scheme + "'");
  c.scheme = it->second;
  for (int k = 0; k < 3; ++k)
    c.gratings[static_cast<std::size_t>(k)] =
        parse_grating(root["gratings"][static_cast<std::size_t>(k)],
                      "gratings[" + std::to_string(k) + "]");
  const bool has_L = j.contains("separation_length_m");
  const bool has_T = j.contains("separation_time_s");
  if (has_L == has_T)
    fail("interferometer", "exactly one of separation_length_m / separation_time_s required");
  c.separation = has_L ? Separation::length(j["separation_length_m"].get<double>())
                       : Separation::time(j["separation_time_s"].get<double>());
  c.acceleration = optional_num(j, "acceleration_m_per_s2", 0.0);
  c.fourier_order = static_cast<int>(optional_num(j, "fourier_order", 5));
  try {
    c.validate();
  } catch (const std::exception& e) {
    fail("interferometer", e.what());
  }
  return c;
}

RunConfig::ChannelDesc parse_channel(const json& j, const std::string& where) {
  RunConfig::ChannelDesc d;
  const std::string kind = require_str(j, "kind", where);
  if (kind == "collisional") {
    d.kind = RunConfig::ChannelDesc::Kind::collisional;
    d.pressure = optional_num(j, "pressure_Pa", 0.0);
    d.sigma_eff = require_num(j, "sigma_eff_m2", where);
    d.gas_temperature = require_num(j, "gas_temperature_K", where);
    d.gas_mass = require_num(j, "gas_mass_u", where) * constants.amu;
  } else if (kind == "thermal") {
    d.kind = RunConfig::ChannelDesc::Kind::thermal;
    d.t_internal = optional_num(j, "t_internal_K", 0.0);
    d.sigma_abs = require_num(j, "sigma_abs_m2", where);
  } else if (kind == "csl") {
    d.kind = RunConfig::ChannelDesc::Kind::csl;
    d.lambda_csl = optional_num(j, "lambda_per_s", 0.0);
    d.r_c = require_num(j, "rc_m", where);
  } else {
    fail(where + ".kind", "unknown channel kind '" + kind + "'");
  }
  return d;
}

RunConfig::Axis parse_axis(const std::string& axis) {
  const std::map<std::string, RunConfig::Axis> axes{
      {"power", RunConfig::Axis::power},
      {"length", RunConfig::Axis::length},
      {"time", RunConfig::Axis::time},
      {"mass", RunConfig::Axis::mass},
      {"tilt_height", RunConfig::Axis::tilt_height},
      {"timing_imbalance", RunConfig::Axis::timing_imbalance},
      {"pressure", RunConfig::Axis::pressure},
      {"temperature", RunConfig::Axis::temperature},
      {"csl_lambda", RunConfig::Axis::csl_lambda}};
  const auto it = axes.find(axis);
  if (it == axes.end()) fail("scan.axis", "unknown axis '" + axis + "'");
  return it->second;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("JSON parse error: ") + e.what());
  }

  RunConfig cfg;
  const int sections = root.contains("scan") + root.contains("carpet") + root.contains("fit");
  if (sections != 1) fail("(root)", "exactly one of scan / carpet / fit required");

  if (root.contains("particle")) cfg.particle = parse_particle(root["particle"]);
  if (root.contains("interferometer")) cfg.interferometer = parse_interferometer(root);
  if (root.contains("laser")) {
    KdtliLaser l;
    l.power = optional_num(root["laser"], "power_W", 0.0);
    l.waist_y = require_num(root["laser"], "waist_y_m", "laser");
    cfg.laser = l;
  }
  if (root.contains("pulses")) {
    const json& j = root["pulses"];
    if (j.contains("params")) {
      if (!j["params"].is_array() || j["params"].size() != 3)
        fail("pulses.params", "must be an array of three {phi0, n0} entries");
      std::array<PulseParams, 3> ps{};
      for (int k = 0; k < 3; ++k) {
        const json& e = j["params"][static_cast<std::size_t>(k)];
        ps[static_cast<std::size_t>(k)] = {optional_num(e, "phi0", 0.0),
                                           require_num(e, "n0", "pulses.params")};
      }
      cfg.pulse_params = ps;
    } else if (j.contains("energies_J")) {
      if (!j["energies_J"].is_array() || j["energies_J"].size() != 3)
        fail("pulses.energies_J", "must be an array of three pulse energies");
      OtimaPulses p;
      for (int k = 0; k < 3; ++k)
        p.pulse_energies[static_cast<std::size_t>(k)] =
            j["energies_J"][static_cast<std::size_t>(k)].get<double>();
      p.spot_profile_peak = require_num(j, "spot_peak_per_m2", "pulses");
      cfg.pulse_energies = p;
    } else {
      fail("pulses", "needs either params or energies_J");
    }
  }
  cfg.velocity_nodes = static_cast<int>(optional_num(root, "velocity_nodes", 32));
  if (cfg.velocity_nodes < 1) fail("velocity_nodes", "must be >= 1");

  if (root.contains("decoherence")) {
    if (!root["decoherence"].is_array()) fail("decoherence", "must be an array");
    int i = 0;
    for (const auto& ch : root["decoherence"])
      cfg.channels.push_back(parse_channel(ch, "decoherence[" + std::to_string(i++) + "]"));
  }

  if (root.contains("scan")) {
    cfg.task = RunConfig::Task::scan;
    const json& j = root["scan"];
    cfg.scan.axis = parse_axis(require_str(j, "axis", "scan"));
    cfg.scan.min = require_num(j, "min", "scan");
    cfg.scan.max = require_num(j, "max", "scan");
    cfg.scan.points = require_int(j, "points", "scan");
    cfg.scan.tilt_rad = optional_num(j, "tilt_rad", 0.0);
    cfg.scan.divergence_rad = optional_num(j, "divergence_rad", 0.0);
    if (cfg.scan.points < 2) fail("scan.points", "must be >= 2");
    if (!(cfg.scan.min <= cfg.scan.max) || !std::isfinite(cfg.scan.min) ||
        !std::isfinite(cfg.scan.max))
      fail("scan", "range must be finite with min <= max");
  } else if (root.contains("carpet")) {
    cfg.task = RunConfig::Task::carpet;
    const json& j = root["carpet"];
    if (!j.contains("grating")) fail("carpet.grating", "missing");
    cfg.carpet.grating = parse_grating(j["grating"], "carpet.grating");
    cfg.carpet.t_min = optional_num(j, "t_min_tt", 0.0);
    cfg.carpet.t_max = optional_num(j, "t_max_tt", 2.0);
    cfg.carpet.t_points = require_int(j, "t_points", "carpet");
    cfg.carpet.x_points = require_int(j, "x_points", "carpet");
    cfg.carpet.classical = j.value("classical", true);
    if (cfg.carpet.t_points < 2 || cfg.carpet.x_points < 2)
      fail("carpet", "t_points and x_points must be >= 2");
    if (cfg.carpet.t_min < 0.0 || cfg.carpet.t_max < cfg.carpet.t_min)
      fail("carpet", "time range must satisfy 0 <= t_min <= t_max");
  } else {
    cfg.task = RunConfig::Task::fit;
    const json& j = root["fit"];
    cfg.fit.data_path = require_str(j, "data_path", "fit");
    cfg.fit.box.alpha_min = require_num(j, "alpha_min_C_m2_per_V", "fit");
    cfg.fit.box.alpha_max = require_num(j, "alpha_max_C_m2_per_V", "fit");
    cfg.fit.box.sigma_min = optional_num(j, "sigma_min_m2", 0.0);
    cfg.fit.box.sigma_max = optional_num(j, "sigma_max_m2", 0.0);
    if (!(cfg.fit.box.alpha_min < cfg.fit.box.alpha_max) || cfg.fit.box.alpha_min <= 0.0)
      fail("fit", "alpha search box must be positive with min < max");
    if (cfg.fit.box.sigma_min < 0.0 || cfg.fit.box.sigma_max < cfg.fit.box.sigma_min)
      fail("fit", "sigma search box must satisfy 0 <= min <= max");
  }

  if (root.contains("output")) {
    if (!root["output"].is_string()) fail("output", "must be a string");
    cfg.output = root["output"].get<std::string>();
  }
  return cfg;
}

}  // namespace talbot::cli
