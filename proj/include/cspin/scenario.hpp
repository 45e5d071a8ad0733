#pragma once

#include "cspin/analysis.hpp"
#include "cspin/closed_form.hpp"
#include "cspin/errors.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace cspin {

enum class Mode {
  Homogeneous,
  Inhomogeneous,
  Jc,
  Compare,
  Revivals,
  FidelityScan,
  Sweep,
};

Mode mode_from_string(const std::string& name);
std::string to_string(Mode mode);

struct TimeGridSpec {
  double t_start = 0.0;
  double t_end = 60.0;
  int n_points = 2000;

  std::vector<double> make() const;
};

struct ScenarioConfig {
  Mode mode = Mode::Homogeneous;
  ModelParams model{8, 1.0, 1.0, 1.0};
  double theta = 1.5707963267948966;
  double phi = 1.5707963267948966;
  int phi_points = 64;  // fidelity-scan phi grid over [0, 2 pi)
  TimeGridSpec grid;
  std::vector<std::string> observables;  // empty = mode default

  // inhomogeneous profile
  std::string profile_kind = "exponential";
  double alpha = 0.0;
  double integrable_const = 0.0;
  std::vector<double> explicit_A;
  std::vector<double> explicit_Delta;

  // sweep
  std::string sweep_axis;  // "N" | "alpha" | "theta"
  std::vector<double> sweep_values;

  double min_prominence = kDefaultMinProminence;
  int smooth_window = kDefaultSmoothWindow;
  int revival_m = 1;
  double eps_tail = 1e-12;
  double compare_tolerance = 1e-9;

  std::string out_dir = "out";
  int ed_cap = kDefaultEdCap;
  int threads = 1;
  std::string cache_path;  // optional spectrum-cache persistence
};

/// Parse and validate; throws ConfigError naming the offending field path.
ScenarioConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ScenarioConfig& config);

/// Execute one scenario (dispatches sweeps too), write CSV outputs and
/// manifest.json under config.out_dir, and return the manifest document.
/// The manifest echoes the config and lists every output file with its
/// checksum; data files themselves carry no timestamps.
nlohmann::json run_scenario(const ScenarioConfig& config);

}  // namespace cspin
