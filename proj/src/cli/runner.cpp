#include "cli/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli/csv.hpp"
#include "cli/run_config.hpp"
#include "cli/svg.hpp"
#include "talbot/carpet.hpp"
#include "talbot/constants.hpp"
#include "talbot/core.hpp"
#include "talbot/decoherence.hpp"
#include "talbot/errors.hpp"
#include "talbot/metrology.hpp"

namespace talbot::cli {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out.push_back(lo + (hi - lo) * static_cast<double>(i) / (n - 1));
  return out;
}

double mean_velocity(const ParticleSpec& p, int nodes) {
  double v = 0.0;
  for (const auto& nd : velocity_quadrature(p.velocity_dist, nodes)) v += nd.weight * nd.v;
  return v;
}

const ParticleSpec& need_particle(const RunConfig& cfg) {
  if (!cfg.particle) throw config_error("this task needs a 'particle' section");
  return *cfg.particle;
}

const InterferometerConfig& need_interferometer(const RunConfig& cfg) {
  if (!cfg.interferometer) throw config_error("this task needs an 'interferometer' section");
  return *cfg.interferometer;
}

const KdtliLaser& need_laser(const RunConfig& cfg) {
  if (!cfg.laser) throw config_error("this task needs a 'laser' section");
  return *cfg.laser;
}

std::array<PulseParams, 3> resolve_pulses(const RunConfig& cfg) {
  if (cfg.pulse_params) return *cfg.pulse_params;
  if (cfg.pulse_energies) {
    const ParticleSpec& p = need_particle(cfg);
    const double lambda = 2.0 * need_interferometer(cfg).period();
    std::array<PulseParams, 3> out{};
    for (int k = 0; k < 3; ++k)
      out[static_cast<std::size_t>(k)] =
          otima_pulse_params(p, cfg.pulse_energies->pulse_energies[static_cast<std::size_t>(k)],
                             cfg.pulse_energies->spot_profile_peak, lambda);
    return out;
  }
  throw config_error("this task needs a 'pulses' section");
}


struct BaseSignal {
  FringeSignal quantum;
  FringeSignal classical;
  double T = 0.0;  // traversal time used for decoherence factors
};

// Velocity-averaged fringe amplitudes for the configured scheme.
BaseSignal base_signal(const RunConfig& cfg) {
  const InterferometerConfig& ic = need_interferometer(cfg);
  BaseSignal out;
  if (ic.scheme == Scheme::otima) {
    const auto pulses = resolve_pulses(cfg);
    const double mass = need_particle(cfg).mass;
    out.quantum = otima_signal_params(ic, mass, pulses, Mode::quantum);
    out.classical = otima_signal_params(ic, mass, pulses, Mode::classical);
    out.T = ic.separation.value;
    return out;
  }
  const ParticleSpec& p = need_particle(cfg);
  if (ic.scheme == Scheme::kdtli) {
    const KdtliLaser& laser = need_laser(cfg);
    out.quantum = kdtli_fringe_averaged(ic, p, laser, Mode::quantum, cfg.velocity_nodes);
    out.classical = kdtli_fringe_averaged(ic, p, laser, Mode::classical, cfg.velocity_nodes);
  } else {
    const auto nodes = velocity_quadrature(p.velocity_dist, cfg.velocity_nodes);
    for (int pass = 0; pass < 2; ++pass) {
      const Mode mode = pass == 0 ? Mode::quantum : Mode::classical;
      FringeSignal acc;
      bool first_node = true;
      for (const auto& nd : nodes) {
        FringeSignal s = tl_fringe(ic, p.mass, nd.v, mode);
        if (first_node) {
          acc = s;
          for (auto& a : acc.amplitudes) a *= nd.weight;
          first_node = false;
        } else {
          for (std::size_t i = 0; i < acc.amplitudes.size(); ++i)
            acc.amplitudes[i] += nd.weight * s.amplitudes[i];
        }
      }
      (pass == 0 ? out.quantum : out.classical) = acc;
    }
  }
  out.T = ic.separation.value / mean_velocity(p, cfg.velocity_nodes);
  return out;
}

// Channels listed in the config, except the scanned kind (if any).
std::vector<DecoherenceChannel> static_channels(
    const RunConfig& cfg, std::optional<RunConfig::ChannelDesc::Kind> scanned) {
  std::vector<DecoherenceChannel> out;
  for (const auto& d : cfg.channels) {
    if (scanned && d.kind == *scanned) continue;
    switch (d.kind) {
      case RunConfig::ChannelDesc::Kind::collisional:
        out.push_back(
            collisional_channel(d.pressure, d.sigma_eff, {d.gas_temperature, d.gas_mass}));
        break;
      case RunConfig::ChannelDesc::Kind::thermal: {
        const double sig = d.sigma_abs;
        out.push_back(thermal_emission_channel([sig](double) { return sig; }, d.t_internal));
        break;
      }
      case RunConfig::ChannelDesc::Kind::csl:
        out.push_back(csl_as_channel({d.lambda_csl, d.r_c}, need_particle(cfg).mass));
        break;
    }
  }
  return out;
}

const RunConfig::ChannelDesc* find_channel(const RunConfig& cfg,
                                           RunConfig::ChannelDesc::Kind kind) {
  for (const auto& d : cfg.channels)
    if (d.kind == kind) return &d;
  return nullptr;
}

struct ScanTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

ScanTable run_scan(const RunConfig& cfg) {
  using Axis = RunConfig::Axis;
  const auto axis_values = linspace(cfg.scan.min, cfg.scan.max, cfg.scan.points);
  ScanTable t;

  switch (cfg.scan.axis) {
    case Axis::power: {
      const InterferometerConfig& ic = need_interferometer(cfg);
      if (ic.scheme != Scheme::kdtli) throw config_error("power scan needs the kdtli scheme");
      const ParticleSpec& p = need_particle(cfg);
      const KdtliLaser& laser = need_laser(cfg);
      const auto chans = static_channels(cfg, std::nullopt);
      const double T = ic.separation.value / mean_velocity(p, cfg.velocity_nodes);
      t.columns = {"power_W", "vsin_quantum", "vsin_classical"};
      for (const double P : axis_values) {
        KdtliLaser l{P, laser.waist_y};
        FringeSignal q = kdtli_fringe_averaged(ic, p, l, Mode::quantum, cfg.velocity_nodes);
        FringeSignal c = kdtli_fringe_averaged(ic, p, l, Mode::classical, cfg.velocity_nodes);
        if (!chans.empty()) {
          q = apply_channels(q, chans, p.mass, T);
          c = apply_channels(c, chans, p.mass, T);
        }
        t.rows.push_back({P, visibility(q).v_sin, visibility(c).v_sin});
      }
      break;
    }
    case Axis::length: {
      const InterferometerConfig& ic0 = need_interferometer(cfg);
      if (ic0.separation.kind != Separation::Kind::length)
        throw config_error("length scan needs a stationary scheme");
      const ParticleSpec& p = need_particle(cfg);
      const auto chans = static_channels(cfg, std::nullopt);
      t.columns = {"length_m", "vsin_quantum", "vsin_classical"};
      for (const double L : axis_values) {
        RunConfig point = cfg;
        point.interferometer->separation = Separation::length(L);
        BaseSignal s = base_signal(point);
        if (!chans.empty()) {
          s.quantum = apply_channels(s.quantum, chans, p.mass, s.T);
          s.classical = apply_channels(s.classical, chans, p.mass, s.T);
        }
        t.rows.push_back({L, visibility(s.quantum).v_sin, visibility(s.classical).v_sin});
      }
      break;
    }
    case Axis::time: {
      const InterferometerConfig& ic0 = need_interferometer(cfg);
      if (ic0.scheme != Scheme::otima) throw config_error("time scan needs the otima scheme");
      const ParticleSpec& p = need_particle(cfg);
      const auto chans = static_channels(cfg, std::nullopt);
      t.columns = {"time_s", "vsin_quantum", "vsin_classical"};
      for (const double T : axis_values) {
        RunConfig point = cfg;
        point.interferometer->separation = Separation::time(T);
        BaseSignal s = base_signal(point);
        if (!chans.empty()) {
          s.quantum = apply_channels(s.quantum, chans, p.mass, s.T);
          s.classical = apply_channels(s.classical, chans, p.mass, s.T);
        }
        t.rows.push_back({T, visibility(s.quantum).v_sin, visibility(s.classical).v_sin});
      }
      break;
    }
    case Axis::mass: {
      const InterferometerConfig& ic = need_interferometer(cfg);
      if (ic.scheme != Scheme::otima) throw config_error("mass scan needs the otima scheme");
      const auto pulses = resolve_pulses(cfg);
      std::vector<double> masses;
      masses.reserve(axis_values.size());
      for (const double u : axis_values) masses.push_back(u * constants.amu);
      const auto q = otima_mass_scan_params(ic, masses, pulses, 0.0, Mode::quantum);
      const auto c = otima_mass_scan_params(ic, masses, pulses, 0.0, Mode::classical);
      t.columns = {"mass_u", "vsin_quantum", "delta_sn_quantum", "delta_sn_classical"};
      for (std::size_t i = 0; i < q.size(); ++i)
        t.rows.push_back({axis_values[i], q[i].v_sin, q[i].delta_sn, c[i].delta_sn});
      break;
    }
    case Axis::tilt_height: {
      if (cfg.scan.tilt_rad <= 0.0) throw config_error("tilt_height scan needs scan.tilt_rad > 0");
      const BaseSignal s = base_signal(cfg);
      const double d = s.quantum.period;
      t.columns = {"height_m", "g2_shift_m", "phase_rad", "signal_quantum", "signal_classical"};
      for (const double h : axis_values) {
        const double shift = tilt_scan_shift(h, cfg.scan.tilt_rad);
        const double phase = total_fringe_phase(0.0, shift, 0.0, d);
        t.rows.push_back({h, shift, phase, evaluate_phase(s.quantum, phase),
                          evaluate_phase(s.classical, phase)});
      }
      break;
    }
    case Axis::timing_imbalance: {
      if (cfg.scan.divergence_rad <= 0.0)
        throw config_error("timing_imbalance scan needs scan.divergence_rad > 0");
      const ParticleSpec& p = need_particle(cfg);
      const double v = mean_velocity(p, cfg.velocity_nodes);
      const double d = need_interferometer(cfg).period();
      t.columns = {"dt_s", "envelope"};
      for (const double dt : axis_values)
        t.rows.push_back({dt, timing_imbalance_envelope(cfg.scan.divergence_rad, v, d, dt)});
      break;
    }
    case Axis::pressure: {
      const auto* desc = find_channel(cfg, RunConfig::ChannelDesc::Kind::collisional);
      if (!desc) throw config_error("pressure scan needs a collisional decoherence channel");
      const ParticleSpec& p = need_particle(cfg);
      BaseSignal s = base_signal(cfg);
      const auto chans = static_channels(cfg, RunConfig::ChannelDesc::Kind::collisional);
      if (!chans.empty()) s.quantum = apply_channels(s.quantum, chans, p.mass, s.T);
      const double v0 = visibility(s.quantum).v_sin;
      const double d = s.quantum.period;
      t.columns = {"pressure_Pa", "reduction_r1", "vsin_quantum"};
      for (const double pr : axis_values) {
        const auto ch = collisional_channel(pr, desc->sigma_eff,
                                            {desc->gas_temperature, desc->gas_mass});
        const double r1 = reduction_factor(ch, 1, p.mass, d, s.T);
        t.rows.push_back({pr, r1, v0 * r1});
      }
      break;
    }
    case Axis::temperature: {
      const auto* desc = find_channel(cfg, RunConfig::ChannelDesc::Kind::thermal);
      if (!desc) throw config_error("temperature scan needs a thermal decoherence channel");
      const ParticleSpec& p = need_particle(cfg);
      BaseSignal s = base_signal(cfg);
      const auto chans = static_channels(cfg, RunConfig::ChannelDesc::Kind::thermal);
      if (!chans.empty()) s.quantum = apply_channels(s.quantum, chans, p.mass, s.T);
      const double v0 = visibility(s.quantum).v_sin;
      const double d = s.quantum.period;
      const double sig = desc->sigma_abs;
      t.columns = {"temperature_K", "gamma_per_s", "reduction_r1", "vsin_quantum"};
      for (const double ti : axis_values) {
        const auto ch = thermal_emission_channel([sig](double) { return sig; }, ti);
        const double r1 = reduction_factor(ch, 1, p.mass, d, s.T);
        t.rows.push_back({ti, ch.rate(0.0), r1, v0 * r1});
      }
      break;
    }
    case Axis::csl_lambda: {
      const auto* desc = find_channel(cfg, RunConfig::ChannelDesc::Kind::csl);
      if (!desc) throw config_error("csl_lambda scan needs a csl decoherence channel");
      const ParticleSpec& p = need_particle(cfg);
      BaseSignal s = base_signal(cfg);
      const auto chans = static_channels(cfg, RunConfig::ChannelDesc::Kind::csl);
      if (!chans.empty()) s.quantum = apply_channels(s.quantum, chans, p.mass, s.T);
      const double v0 = visibility(s.quantum).v_sin;
      const double d = s.quantum.period;
      const double T_T = talbot_time(p.mass, d);
      t.columns = {"lambda_per_s", "csl_factor", "vsin_quantum"};
      for (const double lam : axis_values) {
        const double f = csl_visibility_factor({lam, desc->r_c}, p.mass, d, s.T, T_T);
        t.rows.push_back({lam, f, v0 * f});
      }
      break;
    }
  }
  return t;
}

void write_table(const ScanTable& t, const std::string& path, const std::string& hash,
                 bool write_svg_file) {
  CsvBuilder csv;
  csv.meta("talbot-lab", kVersion);
  csv.meta("config-hash", hash);
  csv.header(t.columns);
  for (const auto& r : t.rows) csv.row(r);
  write_file(path, csv.str());

  if (write_svg_file && t.columns.size() >= 2) {
    std::vector<double> x;
    std::vector<std::vector<double>> series(t.columns.size() - 1);
    for (const auto& r : t.rows) {
      x.push_back(r[0]);
      for (std::size_t c = 1; c < r.size(); ++c) series[c - 1].push_back(r[c]);
    }
    std::vector<std::string> names(t.columns.begin() + 1, t.columns.end());
    const std::string svg = svg_line_plot(fs::path(path).stem().string(), t.columns[0], x,
                                          names, series);
    write_file(fs::path(path).replace_extension(".svg").string(), svg);
  }
}

void run_carpet(const RunConfig& cfg, const std::string& out_path, const std::string& hash) {
  const auto& cp = cfg.carpet;
  const auto times = linspace(cp.t_min, cp.t_max, cp.t_points);
  const auto positions = uniform_positions(cp.x_points);

  std::vector<std::string> cols;
  cols.push_back("t_over_TT");
  for (const double x : positions) cols.push_back("x=" + format_double(x));

  const auto emit = [&](const CarpetGrid& grid, const std::string& path) {
    CsvBuilder csv;
    csv.meta("talbot-lab", kVersion);
    csv.meta("config-hash", hash);
    if (grid.truncation_warning)
      csv.meta("warning", "truncation tail above 1e-6; raise fourier order");
    csv.header(cols);
    std::vector<double> row(positions.size() + 1);
    for (std::size_t i = 0; i < grid.times.size(); ++i) {
      row[0] = grid.times[i];
      for (std::size_t k = 0; k < positions.size(); ++k) row[k + 1] = grid.density[i][k];
      csv.row(row);
    }
    write_file(path, csv.str());
  };

  emit(carpet(talbot_coeff_quantum(cp.grating), times, positions), out_path);
  if (cp.classical) {
    const fs::path p(out_path);
    const std::string cls =
        (p.parent_path() / (p.stem().string() + "_classical" + p.extension().string())).string();
    emit(classical_carpet(cp.grating, times, positions), cls);
  }
}

std::vector<VisibilityDataPoint> read_fit_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open fit data: " + path);
  std::vector<VisibilityDataPoint> data;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (auto& c : line)
      if (c == ',') c = ' ';
    std::istringstream ss(line);
    double p = 0.0, v = 0.0;
    if (!(ss >> p >> v)) continue;  // header or malformed row
    data.push_back({p, v});
  }
  if (data.empty()) throw config_error("fit data file has no usable rows: " + path);
  return data;
}

void run_fit(const RunConfig& cfg, const std::string& out_path, const std::string& hash,
             const std::string& config_dir) {
  KdtliPowerModel model;
  model.config = need_interferometer(cfg);
  model.laser = need_laser(cfg);
  model.particle = need_particle(cfg);
  model.velocity_nodes = cfg.velocity_nodes;

  fs::path data_path(cfg.fit.data_path);
  if (data_path.is_relative()) data_path = fs::path(config_dir) / data_path;
  const auto data = read_fit_data(data_path.string());
  const FitResult r = fit_visibility_curve(data, model, cfg.fit.box);

  CsvBuilder csv;
  csv.meta("talbot-lab", kVersion);
  csv.meta("config-hash", hash);
  const std::vector<std::string> cols{"alpha_C_m2_per_V", "sigma_m2",    "alpha_halfwidth",
                                      "sigma_halfwidth",  "residual_norm", "iterations",
                                      "boundary_warning"};
  csv.header(cols);
  csv.row(std::vector<double>{r.alpha_opt, r.sigma_abs, r.alpha_halfwidth, r.sigma_halfwidth,
                              r.residual_norm, static_cast<double>(r.iterations),
                              r.boundary_warning ? 1.0 : 0.0});
  write_file(out_path, csv.str());
}

}  // namespace

int run_file(const std::string& config_path, const std::string& out_dir, bool write_svg) {
  std::string text;
  try {
    text = read_file(config_path);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }

  try {
    const RunConfig cfg = parse_run_config(text);
    const std::string hash = fnv1a_hex(text);
    fs::path out(cfg.output);
    if (!out_dir.empty()) out = fs::path(out_dir) / out;
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    const std::string config_dir = fs::path(config_path).parent_path().string();

    switch (cfg.task) {
      case RunConfig::Task::scan:
        write_table(run_scan(cfg), out.string(), hash, write_svg);
        break;
      case RunConfig::Task::carpet:
        run_carpet(cfg, out.string(), hash);
        break;
      case RunConfig::Task::fit:
        run_fit(cfg, out.string(), hash, config_dir);
        break;
    }
    return 0;
  } catch (const accuracy_error& e) {
    std::cerr << "accuracy error: " << e.what() << "\n";
    return 3;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}

int validate_file(const std::string& config_path) {
  std::string text;
  try {
    text = read_file(config_path);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  try {
    parse_run_config(text);
    std::cout << "ok\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace talbot::cli
