// cspin - XXZ central spin dynamics: closed-form, JC limit, and exact
// diagonalization, batch-driven from a JSON config and/or command-line flags.

#include "cspin/scenario.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

namespace {

using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitValidation = 4;

struct FlagSet {
  std::string config_path;
  std::string out_dir;
  std::string cache_path;
  std::string sweep_axis;
  std::vector<double> sweep_values;
  int N = -1, points = -1, threads = -1, ed_cap = -1, smooth_window = -1;
  int phi_points = -1, revival_m = -1;
  double B, A, Delta, theta, phi, alpha, t_start, t_end, min_prominence;
  bool has_B = false, has_A = false, has_Delta = false, has_theta = false;
  bool has_phi = false, has_alpha = false, has_t_start = false, has_t_end = false;
  bool has_prominence = false;
  std::string profile_kind;
  std::vector<std::string> observables;
};

void add_common_flags(CLI::App* cmd, FlagSet& f) {
  cmd->add_option("--config", f.config_path, "JSON config file; flags override it");
  cmd->add_option("--out", f.out_dir, "output directory");
  cmd->add_option("-N,--N,--bath-size", f.N, "number of bath spins");
  cmd->add_option("--B", f.B, "effective field")->each([&](const std::string&) { f.has_B = true; });
  cmd->add_option("--A", f.A, "transverse coupling")->each([&](const std::string&) { f.has_A = true; });
  cmd->add_option("--Delta", f.Delta, "longitudinal coupling")
      ->each([&](const std::string&) { f.has_Delta = true; });
  cmd->add_option("--theta", f.theta, "coherent-state angle in [0, pi]")
      ->each([&](const std::string&) { f.has_theta = true; });
  cmd->add_option("--phi", f.phi, "equatorial target phase")
      ->each([&](const std::string&) { f.has_phi = true; });
  cmd->add_option("--alpha", f.alpha, "inhomogeneity parameter")
      ->each([&](const std::string&) { f.has_alpha = true; });
  cmd->add_option("--t-start", f.t_start, "grid start time")
      ->each([&](const std::string&) { f.has_t_start = true; });
  cmd->add_option("--t-end", f.t_end, "grid end time")
      ->each([&](const std::string&) { f.has_t_end = true; });
  cmd->add_option("--n-points,--points", f.points, "grid point count");
  cmd->add_option("--threads", f.threads, "worker threads");
  cmd->add_option("--ed-cap", f.ed_cap, "exact-diagonalization size cap");
  cmd->add_option("--cache", f.cache_path, "spectrum cache file");
  cmd->add_option("--profile", f.profile_kind, "coupling generator: uniform|exponential|integrable|explicit");
  cmd->add_option("--observables", f.observables, "observable columns");
  cmd->add_option("--min-prominence", f.min_prominence, "revival detection threshold")
      ->each([&](const std::string&) { f.has_prominence = true; });
  cmd->add_option("--smooth-window", f.smooth_window, "smoothing window (samples)");
  cmd->add_option("--phi-points", f.phi_points, "fidelity-scan phi resolution");
  cmd->add_option("--m", f.revival_m, "revival index m");
  cmd->add_option("--axis", f.sweep_axis, "sweep axis: N|alpha|theta");
  cmd->add_option("--values", f.sweep_values, "sweep axis values");
}

json merged_config(const std::string& mode, const FlagSet& f) {
  json doc = json::object();
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw cspin::ConfigError("config", "cannot open " + f.config_path);
    try {
      in >> doc;
    } catch (const json::exception& e) {
      throw cspin::ConfigError("config", std::string("parse error: ") + e.what());
    }
  }
  doc["mode"] = mode;
  auto model = doc.value("model", json::object());
  if (f.N > 0) model["N"] = f.N;
  if (f.has_B) model["B"] = f.B;
  if (f.has_A) model["A"] = f.A;
  if (f.has_Delta) model["Delta"] = f.Delta;
  if (!model.empty()) doc["model"] = model;
  if (f.has_theta) doc["theta"] = f.theta;
  if (f.has_phi) doc["phi"] = f.phi;
  if (f.phi_points > 0) doc["phi_points"] = f.phi_points;
  auto grid = doc.value("grid", json::object());
  if (f.has_t_start) grid["t_start"] = f.t_start;
  if (f.has_t_end) grid["t_end"] = f.t_end;
  if (f.points > 0) grid["n_points"] = f.points;
  if (!grid.empty()) doc["grid"] = grid;
  if (!f.observables.empty()) doc["observables"] = f.observables;
  auto profile = doc.value("profile", json::object());
  if (!f.profile_kind.empty()) profile["kind"] = f.profile_kind;
  if (f.has_alpha) profile["alpha"] = f.alpha;
  if (!profile.empty()) doc["profile"] = profile;
  auto sweep = doc.value("sweep", json::object());
  if (!f.sweep_axis.empty()) sweep["axis"] = f.sweep_axis;
  if (!f.sweep_values.empty()) sweep["values"] = f.sweep_values;
  if (!sweep.empty()) doc["sweep"] = sweep;
  auto analysis = doc.value("analysis", json::object());
  if (f.has_prominence) analysis["min_prominence"] = f.min_prominence;
  if (f.smooth_window > 0) analysis["smooth_window"] = f.smooth_window;
  if (!analysis.empty()) doc["analysis"] = analysis;
  if (f.revival_m > 0) doc["revival_m"] = f.revival_m;
  if (!f.out_dir.empty()) doc["output"] = {{"dir", f.out_dir}};
  if (f.ed_cap > 0) doc["ed_cap"] = f.ed_cap;
  if (f.threads > 0) doc["threads"] = f.threads;
  if (!f.cache_path.empty()) doc["cache"] = f.cache_path;
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"XXZ central spin dynamics engine"};
  app.require_subcommand(1);

  const std::vector<std::string> modes = {"homogeneous", "inhomogeneous", "jc",
                                          "compare",     "revivals",      "fidelity-scan",
                                          "sweep"};
  std::map<std::string, FlagSet> flags;
  for (const std::string& mode : modes) {
    CLI::App* cmd = app.add_subcommand(mode);
    add_common_flags(cmd, flags[mode]);
  }

  CLI11_PARSE(app, argc, argv);

  const std::string mode = app.get_subcommands().front()->get_name();
  try {
    const json doc = merged_config(mode, flags[mode]);
    const cspin::ScenarioConfig config = cspin::config_from_json(doc);
    const json manifest = cspin::run_scenario(config);
    std::cout << manifest.dump(2) << "\n";
    return 0;
  } catch (const cspin::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const cspin::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const cspin::ValidationError& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
