#include "cspin/scenario.hpp"

#include "cspin/ed.hpp"
#include "cspin/jc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <thread>

namespace cspin {

namespace {

using nlohmann::json;

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr const char* kEngineVersion = "1.0.0";

// ---- small utilities -------------------------------------------------------

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t h = 0xcbf29ce484222325ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

// Chunked parallel map; results land in caller-owned storage by index, so the
// merged output is identical to the sequential path.
void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  if (threads <= 1 || n < 2) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  const int workers = std::min(threads, n);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([=, &body] {
      for (int i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

class OutputSet {
 public:
  explicit OutputSet(std::string dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  void write_csv(const std::string& name, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
    const std::string path = dir_ + "/" + name;
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path);
    for (std::size_t i = 0; i < header.size(); ++i)
      out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        out << (i ? "," : "") << format_value(row[i]);
      out << "\n";
    }
    out.close();
    files_.push_back(path);
  }

  void write_json(const std::string& name, const json& doc) {
    const std::string path = dir_ + "/" + name;
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << doc.dump(2) << "\n";
    out.close();
    files_.push_back(path);
  }

  json listing() const {
    json list = json::array();
    for (const auto& path : files_) {
      char sum[20];
      std::snprintf(sum, sizeof(sum), "%016llx",
                    static_cast<unsigned long long>(fnv1a_file(path)));
      list.push_back({{"path", path},
                      {"bytes", std::filesystem::file_size(path)},
                      {"fnv1a64", sum}});
    }
    return list;
  }

  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
  std::vector<std::string> files_;
};

// ---- config ----------------------------------------------------------------

template <typename T>
T field_or(const json& doc, const std::string& key, T fallback,
           const std::string& path) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path.empty() ? key : path + "." + key, "wrong type");
  }
}

std::vector<std::string> default_observables(Mode mode) {
  switch (mode) {
    case Mode::Homogeneous:
      return {"sz0", "purity", "entropy", "fidelity"};
    case Mode::Inhomogeneous:
      return {"sz0", "pbath", "purity", "entropy"};
    default:
      return {};
  }
}

void validate_config(const ScenarioConfig& c) {
  if (c.model.N < 1) throw ConfigError("model.N", "must be >= 1");
  if (!std::isfinite(c.model.B) || !std::isfinite(c.model.A) || !std::isfinite(c.model.Delta))
    throw ConfigError("model", "B, A, Delta must be finite");
  if (!(c.theta >= 0.0 && c.theta <= kPi)) throw ConfigError("theta", "must lie in [0, pi]");
  if (c.grid.n_points < 2) throw ConfigError("grid.n_points", "must be >= 2");
  if (!(c.grid.t_end > c.grid.t_start)) throw ConfigError("grid.t_end", "must exceed t_start");
  if (c.smooth_window < 1) throw ConfigError("analysis.smooth_window", "must be >= 1");
  if (c.min_prominence < 0) throw ConfigError("analysis.min_prominence", "must be >= 0");
  if (c.revival_m < 1) throw ConfigError("revival_m", "must be >= 1");
  if (c.threads < 1) throw ConfigError("threads", "must be >= 1");
  if (c.ed_cap < 1) throw ConfigError("ed_cap", "must be >= 1");
  if (c.phi_points < 2) throw ConfigError("phi_points", "must be >= 2");
  if (!(c.eps_tail > 0 && c.eps_tail < 1)) throw ConfigError("eps_tail", "must lie in (0,1)");
  if (c.mode == Mode::Sweep) {
    if (c.sweep_axis != "N" && c.sweep_axis != "alpha" && c.sweep_axis != "theta")
      throw ConfigError("sweep.axis", "must be one of N, alpha, theta");
    if (c.sweep_values.empty()) throw ConfigError("sweep.values", "must be non-empty");
    for (double v : c.sweep_values)
      if (!std::isfinite(v)) throw ConfigError("sweep.values", "must be finite");
  }
  if (c.mode == Mode::Inhomogeneous || (c.mode == Mode::Sweep && c.sweep_axis == "alpha")) {
    if (c.profile_kind != "uniform" && c.profile_kind != "exponential" &&
        c.profile_kind != "integrable" && c.profile_kind != "explicit")
      throw ConfigError("profile.kind", "unknown generator '" + c.profile_kind + "'");
    if (c.profile_kind == "explicit" &&
        (c.explicit_A.empty() || c.explicit_A.size() != c.explicit_Delta.size()))
      throw ConfigError("profile.A", "explicit arrays must be non-empty and equal length");
  }
  const bool needs_ed = c.mode == Mode::Inhomogeneous || c.mode == Mode::Compare ||
                        (c.mode == Mode::Sweep && c.sweep_axis == "alpha");
  if (needs_ed && c.model.N > c.ed_cap)
    throw CapacityError("model.N=" + std::to_string(c.model.N) +
                        " exceeds ed_cap=" + std::to_string(c.ed_cap));
}

CouplingProfile profile_from_config(const ScenarioConfig& c, double alpha) {
  if (c.profile_kind == "uniform") return uniform_profile(c.model.N, c.model.A, c.model.Delta);
  if (c.profile_kind == "exponential")
    return exponential_profile(c.model.N, c.model.A, c.model.Delta, alpha);
  if (c.profile_kind == "integrable") {
    std::vector<double> a(c.model.N, c.model.A);
    return integrable_profile(std::move(a), c.integrable_const);
  }
  return explicit_profile(c.explicit_A, c.explicit_Delta);
}

// ---- per-mode runners ------------------------------------------------------

void check_observables(const std::vector<std::string>& obs,
                       const std::vector<std::string>& known) {
  for (const std::string& name : obs)
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw ConfigError("observables", "unknown observable '" + name + "'");
}

json run_homogeneous(const ScenarioConfig& c, OutputSet& out) {
  const std::vector<double> grid = c.grid.make();
  const std::vector<std::string> obs =
      c.observables.empty() ? default_observables(Mode::Homogeneous) : c.observables;
  check_observables(obs, {"sz0", "purity", "entropy", "fidelity"});
  std::vector<std::vector<double>> rows(grid.size());
  parallel_for(static_cast<int>(grid.size()), c.threads, [&](int i) {
    const double t = grid[i];
    const QubitState rho = reduced_density_matrix(c.model, c.theta, t);
    std::vector<double> row{t};
    for (const std::string& name : obs) {
      if (name == "sz0") row.push_back(central_polarization(c.model, c.theta, t));
      else if (name == "purity") row.push_back(purity(rho));
      else if (name == "entropy") row.push_back(von_neumann_entropy(rho));
      else if (name == "fidelity") row.push_back(fidelity(rho, c.phi));
      else throw ConfigError("observables", "unknown observable '" + name + "'");
    }
    rows[i] = std::move(row);
  });
  std::vector<std::string> header{"t"};
  header.insert(header.end(), obs.begin(), obs.end());
  out.write_csv("homogeneous.csv", header, rows);
  return {{"observables", obs}};
}

json run_inhomogeneous(const ScenarioConfig& c, OutputSet& out, SpectrumCache* cache,
                       double alpha, const std::string& csv_name) {
  const std::vector<double> grid = c.grid.make();
  const std::vector<std::string> obs =
      c.observables.empty() ? default_observables(Mode::Inhomogeneous) : c.observables;
  check_observables(obs, {"sz0", "pbath", "purity", "entropy"});
  EdEngine engine(profile_from_config(c, alpha), c.model.B, c.ed_cap, cache);
  const FullState psi0 = engine.initial_state(c.theta);
  const EdEngine::Evolver evolver = engine.evolver(psi0);

  std::vector<std::vector<double>> rows(grid.size());
  std::vector<double> sz_tot(grid.size()), energy(grid.size()), norm(grid.size());
  parallel_for(static_cast<int>(grid.size()), c.threads, [&](int i) {
    const FullState psi = evolver.at(grid[i]);
    std::vector<double> row{grid[i]};
    const QubitState rho = engine.measure_partial_trace(psi);
    for (const std::string& name : obs) {
      if (name == "sz0") row.push_back(engine.measure_sz0(psi));
      else if (name == "pbath") row.push_back(engine.measure_pbath(psi));
      else if (name == "purity") row.push_back(purity(rho));
      else if (name == "entropy") row.push_back(von_neumann_entropy(rho));
      else throw ConfigError("observables", "unknown observable '" + name + "'");
    }
    rows[i] = std::move(row);
    sz_tot[i] = engine.measure_sz_total(psi);
    energy[i] = engine.measure_energy(psi);
    norm[i] = state_norm(psi);
  });

  std::vector<std::string> header{"t"};
  header.insert(header.end(), obs.begin(), obs.end());
  out.write_csv(csv_name, header, rows);

  double sz_drift = 0, e_drift = 0, norm_err = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sz_drift = std::max(sz_drift, std::abs(sz_tot[i] - sz_tot[0]));
    e_drift = std::max(e_drift, std::abs(energy[i] - energy[0]));
    norm_err = std::max(norm_err, std::abs(norm[i] - 1.0));
  }
  return {{"observables", obs},
          {"alpha", alpha},
          {"max_sz_total_drift", sz_drift},
          {"max_energy_drift", e_drift},
          {"max_norm_error", norm_err}};
}

json run_jc(const ScenarioConfig& c, OutputSet& out) {
  const std::vector<double> grid = c.grid.make();
  const JCParams jc = correspondence(c.model, c.theta);
  const PoissonWeights weights = poisson_weights(jc.nbar, c.eps_tail);
  std::vector<std::vector<double>> rows(grid.size());
  parallel_for(static_cast<int>(grid.size()), c.threads, [&](int i) {
    const double t = grid[i];
    rows[i] = {t, jc_inversion(jc, weights, t),
               2.0 * central_polarization(c.model, c.theta, t)};
  });
  out.write_csv("jc.csv", {"t", "w_jc", "w_closed_form"}, rows);
  double dev = 0.0;
  for (const auto& row : rows) dev = std::max(dev, std::abs(row[1] - row[2]));
  return {{"jc_params",
           {{"detuning", jc.detuning}, {"g", jc.g}, {"nbar", jc.nbar}}},
          {"poisson_n_max", weights.n_max},
          {"finite_n_deviation", dev}};
}

json run_compare(const ScenarioConfig& c, OutputSet& out, SpectrumCache* cache) {
  const std::vector<double> grid = c.grid.make();
  EdEngine engine(uniform_profile(c.model.N, c.model.A, c.model.Delta), c.model.B,
                  c.ed_cap, cache);
  const EdEngine::Evolver evolver = engine.evolver(engine.initial_state(c.theta));

  std::vector<std::vector<double>> rows(grid.size());
  parallel_for(static_cast<int>(grid.size()), c.threads, [&](int i) {
    const double t = grid[i];
    const QubitState closed = reduced_density_matrix(c.model, c.theta, t);
    const FullState psi = evolver.at(t);
    const QubitState ed = engine.measure_partial_trace(psi);
    const double sz_closed = closed.a - 0.5;
    const double sz_ed = engine.measure_sz0(psi);
    const double rho_diff = std::max(std::abs(closed.a - ed.a), std::abs(closed.b - ed.b));
    rows[i] = {t, sz_closed, sz_ed, std::abs(sz_closed - sz_ed), rho_diff};
  });
  out.write_csv("compare.csv", {"t", "sz0_closed", "sz0_ed", "sz0_diff", "rho_diff"}, rows);

  double max_sz = 0, max_rho = 0;
  for (const auto& row : rows) {
    max_sz = std::max(max_sz, row[3]);
    max_rho = std::max(max_rho, row[4]);
  }
  json report{{"max_abs_sz0_diff", max_sz},
              {"max_abs_rho_diff", max_rho},
              {"tolerance", c.compare_tolerance}};
  if (max_sz > c.compare_tolerance || max_rho > c.compare_tolerance)
    throw ValidationError("compare: engines disagree beyond tolerance (sz0 " +
                          format_value(max_sz) + ", rho " + format_value(max_rho) + ")");
  return report;
}

json run_revivals(const ScenarioConfig& c, OutputSet& out) {
  const std::vector<double> grid = c.grid.make();
  TimeSeries series{grid, polarization_series(c.model, c.theta, grid), "sz0"};
  const PeakReport report = detect_revivals(series, c.min_prominence, c.smooth_window);

  std::vector<std::vector<double>> rows(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) rows[i] = {grid[i], series.y[i]};
  out.write_csv("revivals_series.csv", {"t", "sz0"}, rows);

  std::vector<std::vector<double>> peak_rows;
  for (const Peak& p : report.peaks) peak_rows.push_back({p.time, p.height, p.prominence});
  out.write_csv("revivals_peaks.csv", {"t", "height", "prominence"}, peak_rows);

  json predicted = json::array();
  for (int m = 1; m <= c.revival_m; ++m)
    predicted.push_back(revival_time(c.model, c.theta, m));
  json doc{{"n_peaks", report.peaks.size()}, {"predicted_times", predicted}};
  if (!report.peaks.empty()) doc["first_peak_time"] = report.peaks.front().time;
  return doc;
}

json run_fidelity_scan(const ScenarioConfig& c, OutputSet& out) {
  const std::vector<double> grid = c.grid.make();
  std::vector<double> phis(c.phi_points);
  for (int k = 0; k < c.phi_points; ++k) phis[k] = 2.0 * kPi * k / c.phi_points;

  std::vector<std::vector<double>> rows(grid.size() * phis.size());
  parallel_for(static_cast<int>(grid.size()), c.threads, [&](int i) {
    const QubitState rho = reduced_density_matrix(c.model, c.theta, grid[i]);
    for (std::size_t k = 0; k < phis.size(); ++k)
      rows[i * phis.size() + k] = {grid[i], phis[k], fidelity(rho, phis[k])};
  });
  out.write_csv("fidelity_scan.csv", {"t", "phi", "fidelity"}, rows);

  double best_f = -1, best_phi = 0, best_t = 0;
  for (const auto& row : rows) {
    if (row[2] > best_f) {
      best_t = row[0];
      best_phi = row[1];
      best_f = row[2];
    }
  }
  return {{"max_fidelity", best_f}, {"argmax_phi", best_phi}, {"argmax_t", best_t}};
}

json run_sweep(const ScenarioConfig& c, OutputSet& out, SpectrumCache* cache) {
  json sub_reports = json::array();
  if (c.sweep_axis == "N") {
    std::vector<std::pair<double, double>> points;
    std::vector<std::vector<double>> rows;
    for (double value : c.sweep_values) {
      ScenarioConfig sub = c;
      sub.model.N = static_cast<int>(value);
      if (sub.model.N < 1)
        throw ConfigError("sweep.values", "N=" + std::to_string(value) + " invalid");
      // Per-N window sized from the predicted revival so every peak is covered.
      const double t_pred = revival_time(sub.model, sub.theta, c.revival_m);
      sub.grid.t_start = 0.0;
      sub.grid.t_end = 1.4 * t_pred;
      const std::vector<double> grid = sub.grid.make();
      TimeSeries series{grid, polarization_series(sub.model, sub.theta, grid), "sz0"};
      const PeakReport peaks = detect_revivals(series, c.min_prominence, c.smooth_window);
      double detected = std::numeric_limits<double>::quiet_NaN();
      if (static_cast<int>(peaks.peaks.size()) >= c.revival_m)
        detected = peaks.peaks[c.revival_m - 1].time;
      rows.push_back({value, detected, t_pred});
      if (std::isfinite(detected)) points.emplace_back(value, detected);
      sub_reports.push_back({{"N", sub.model.N},
                             {"detected_time", detected},
                             {"predicted_time", t_pred}});
    }
    out.write_csv("sweep_N.csv", {"N", "t_revival", "t_predicted"}, rows);
    json doc{{"axis", "N"}, {"runs", sub_reports}};
    if (points.size() >= 3) {
      const LineFit fit = revival_linearity(points);
      doc["fit"] = {{"slope", fit.slope},
                    {"intercept", fit.intercept},
                    {"residual", fit.residual}};
    }
    return doc;
  }
  if (c.sweep_axis == "alpha") {
    int idx = 0;
    for (double alpha : c.sweep_values) {
      char name[64];
      std::snprintf(name, sizeof(name), "inhomogeneous_alpha_%02d.csv", idx);
      json sub = run_inhomogeneous(c, out, cache, alpha, name);
      sub["csv"] = name;
      sub_reports.push_back(std::move(sub));
      ++idx;
    }
    return {{"axis", "alpha"}, {"runs", sub_reports}};
  }
  // theta sweep: one closed-form polarization series per angle.
  std::vector<std::string> header{"t"};
  const std::vector<double> grid = c.grid.make();
  std::vector<std::vector<double>> rows(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) rows[i] = {grid[i]};
  for (double theta : c.sweep_values) {
    if (!(theta >= 0.0 && theta <= kPi))
      throw ConfigError("sweep.values", "theta must lie in [0, pi]");
    const std::vector<double> series = polarization_series(c.model, theta, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) rows[i].push_back(series[i]);
    header.push_back("sz0_theta_" + format_value(theta));
    sub_reports.push_back({{"theta", theta}});
  }
  out.write_csv("sweep_theta.csv", header, rows);
  return {{"axis", "theta"}, {"runs", sub_reports}};
}

}  // namespace

// ---- public surface --------------------------------------------------------

Mode mode_from_string(const std::string& name) {
  if (name == "homogeneous") return Mode::Homogeneous;
  if (name == "inhomogeneous") return Mode::Inhomogeneous;
  if (name == "jc") return Mode::Jc;
  if (name == "compare") return Mode::Compare;
  if (name == "revivals") return Mode::Revivals;
  if (name == "fidelity-scan") return Mode::FidelityScan;
  if (name == "sweep") return Mode::Sweep;
  throw ConfigError("mode", "unknown mode '" + name + "'");
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Homogeneous: return "homogeneous";
    case Mode::Inhomogeneous: return "inhomogeneous";
    case Mode::Jc: return "jc";
    case Mode::Compare: return "compare";
    case Mode::Revivals: return "revivals";
    case Mode::FidelityScan: return "fidelity-scan";
    case Mode::Sweep: return "sweep";
  }
  return "?";
}

std::vector<double> TimeGridSpec::make() const {
  std::vector<double> grid(n_points);
  for (int i = 0; i < n_points; ++i)
    grid[i] = t_start + (t_end - t_start) * i / (n_points - 1.0);
  return grid;
}

ScenarioConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "config root must be an object");
  ScenarioConfig c;
  c.mode = mode_from_string(field_or<std::string>(doc, "mode", "homogeneous", ""));
  if (doc.contains("model")) {
    const json& m = doc.at("model");
    c.model.N = field_or<int>(m, "N", c.model.N, "model");
    c.model.B = field_or<double>(m, "B", c.model.B, "model");
    c.model.A = field_or<double>(m, "A", c.model.A, "model");
    c.model.Delta = field_or<double>(m, "Delta", c.model.Delta, "model");
  }
  c.theta = field_or<double>(doc, "theta", c.theta, "");
  c.phi = field_or<double>(doc, "phi", c.phi, "");
  c.phi_points = field_or<int>(doc, "phi_points", c.phi_points, "");
  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    c.grid.t_start = field_or<double>(g, "t_start", c.grid.t_start, "grid");
    c.grid.t_end = field_or<double>(g, "t_end", c.grid.t_end, "grid");
    c.grid.n_points = field_or<int>(g, "n_points", c.grid.n_points, "grid");
  }
  c.observables = field_or<std::vector<std::string>>(doc, "observables", {}, "");
  if (doc.contains("profile")) {
    const json& p = doc.at("profile");
    c.profile_kind = field_or<std::string>(p, "kind", c.profile_kind, "profile");
    c.alpha = field_or<double>(p, "alpha", c.alpha, "profile");
    c.integrable_const = field_or<double>(p, "const", c.integrable_const, "profile");
    c.explicit_A = field_or<std::vector<double>>(p, "A", {}, "profile");
    c.explicit_Delta = field_or<std::vector<double>>(p, "Delta", {}, "profile");
  }
  if (doc.contains("sweep")) {
    const json& s = doc.at("sweep");
    c.sweep_axis = field_or<std::string>(s, "axis", "", "sweep");
    c.sweep_values = field_or<std::vector<double>>(s, "values", {}, "sweep");
  }
  if (doc.contains("analysis")) {
    const json& a = doc.at("analysis");
    c.min_prominence = field_or<double>(a, "min_prominence", c.min_prominence, "analysis");
    c.smooth_window = field_or<int>(a, "smooth_window", c.smooth_window, "analysis");
  }
  c.revival_m = field_or<int>(doc, "revival_m", c.revival_m, "");
  c.eps_tail = field_or<double>(doc, "eps_tail", c.eps_tail, "");
  c.compare_tolerance = field_or<double>(doc, "compare_tolerance", c.compare_tolerance, "");
  if (doc.contains("output"))
    c.out_dir = field_or<std::string>(doc.at("output"), "dir", c.out_dir, "output");
  c.ed_cap = field_or<int>(doc, "ed_cap", c.ed_cap, "");
  c.threads = field_or<int>(doc, "threads", c.threads, "");
  c.cache_path = field_or<std::string>(doc, "cache", c.cache_path, "");
  validate_config(c);
  return c;
}

json config_to_json(const ScenarioConfig& c) {
  json doc{
      {"mode", to_string(c.mode)},
      {"model",
       {{"N", c.model.N}, {"B", c.model.B}, {"A", c.model.A}, {"Delta", c.model.Delta}}},
      {"theta", c.theta},
      {"phi", c.phi},
      {"phi_points", c.phi_points},
      {"grid",
       {{"t_start", c.grid.t_start}, {"t_end", c.grid.t_end}, {"n_points", c.grid.n_points}}},
      {"observables", c.observables},
      {"analysis",
       {{"min_prominence", c.min_prominence}, {"smooth_window", c.smooth_window}}},
      {"revival_m", c.revival_m},
      {"eps_tail", c.eps_tail},
      {"compare_tolerance", c.compare_tolerance},
      {"output", {{"dir", c.out_dir}}},
      {"ed_cap", c.ed_cap},
      {"threads", c.threads},
  };
  if (c.mode == Mode::Inhomogeneous || (c.mode == Mode::Sweep && c.sweep_axis == "alpha")) {
    doc["profile"] = {{"kind", c.profile_kind},
                      {"alpha", c.alpha},
                      {"const", c.integrable_const}};
    if (c.profile_kind == "explicit") {
      doc["profile"]["A"] = c.explicit_A;
      doc["profile"]["Delta"] = c.explicit_Delta;
    }
  }
  if (c.mode == Mode::Sweep)
    doc["sweep"] = {{"axis", c.sweep_axis}, {"values", c.sweep_values}};
  if (!c.cache_path.empty()) doc["cache"] = c.cache_path;
  return doc;
}

json run_scenario(const ScenarioConfig& c) {
  validate_config(c);
  const auto start = std::chrono::steady_clock::now();
  OutputSet out(c.out_dir);

  SpectrumCache cache;
  if (!c.cache_path.empty() && std::filesystem::exists(c.cache_path))
    cache.load(c.cache_path);

  json report;
  switch (c.mode) {
    case Mode::Homogeneous: report = run_homogeneous(c, out); break;
    case Mode::Inhomogeneous:
      report = run_inhomogeneous(c, out, &cache, c.alpha, "inhomogeneous.csv");
      break;
    case Mode::Jc: report = run_jc(c, out); break;
    case Mode::Compare: report = run_compare(c, out, &cache); break;
    case Mode::Revivals: report = run_revivals(c, out); break;
    case Mode::FidelityScan: report = run_fidelity_scan(c, out); break;
    case Mode::Sweep: report = run_sweep(c, out, &cache); break;
  }

  if (!c.cache_path.empty()) cache.save(c.cache_path);

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json manifest{{"config", config_to_json(c)},
                {"engine", {{"name", "cspin"}, {"version", kEngineVersion}}},
                {"wall_time_s", wall},
                {"report", report},
                {"outputs", out.listing()}};
  out.write_json("manifest.json", manifest);
  return manifest;
}

}  // namespace cspin
