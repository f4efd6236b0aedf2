#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "talbot/metrology.hpp"
#include "talbot/signal.hpp"
#include "talbot/types.hpp"

namespace talbot::cli {

/// Declarative run description parsed from a JSON document. Units are
/// fixed by field-name suffixes (_m, _s, _u, _W, ...); no unit inference.
struct RunConfig {
  enum class Task { scan, carpet, fit };
  enum class Axis {
    power,
    length,
    time,
    mass,
    tilt_height,
    timing_imbalance,
    pressure,
    temperature,
    csl_lambda
  };

  struct Scan {
    Axis axis = Axis::power;
    double min = 0.0, max = 0.0;
    int points = 0;
    double tilt_rad = 0.0;        // tilt_height axis
    double divergence_rad = 0.0;  // timing_imbalance axis
  };

  struct Carpet {
    GratingSpec grating;
    double t_min = 0.0, t_max = 2.0;
    int t_points = 0;
    int x_points = 0;
    bool classical = true;
  };

  struct ChannelDesc {
    enum class Kind { collisional, thermal, csl };
    Kind kind = Kind::collisional;
    double pressure = 0.0, sigma_eff = 0.0, gas_temperature = 0.0, gas_mass = 0.0;
    double t_internal = 0.0, sigma_abs = 0.0;
    double lambda_csl = 0.0, r_c = 0.0;
  };

  struct Fit {
    std::string data_path;
    SearchBox box;
  };

  Task task = Task::scan;
  std::optional<ParticleSpec> particle;
  std::optional<InterferometerConfig> interferometer;
  std::optional<KdtliLaser> laser;
  std::optional<std::array<PulseParams, 3>> pulse_params;
  std::optional<OtimaPulses> pulse_energies;
  int velocity_nodes = 32;
  Scan scan;
  Carpet carpet{GratingSpec{}, 0.0, 2.0, 0, 0, true};
  std::vector<ChannelDesc> channels;
  Fit fit;
  std::string output = "out.csv";
};

/// Parse and validate; throws config_error with a field diagnostic.
RunConfig parse_run_config(const std::string& json_text);

}  // namespace talbot::cli
