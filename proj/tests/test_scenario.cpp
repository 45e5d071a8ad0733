#include "cspin/scenario.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cspin;
using nlohmann::json;

namespace {

const double kPi = std::acos(-1.0);

std::string scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("cspin_test_" + name);
  std::filesystem::remove_all(dir);
  return dir.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config validation reports field paths") {
  json doc{{"mode", "homogeneous"}, {"model", {{"N", 0}}}};
  try {
    config_from_json(doc);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field == "model.N");
  }

  CHECK_THROWS_AS(config_from_json(json{{"mode", "nonsense"}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(json{{"mode", "homogeneous"},
                                        {"grid", {{"n_points", 1}}}}),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json(json{{"mode", "sweep"}}), ConfigError);
  CHECK_THROWS_AS(
      config_from_json(json{{"mode", "sweep"},
                            {"sweep", {{"axis", "N"}, {"values", json::array()}}}}),
      ConfigError);

  // ED capacity is rejected before any compute.
  CHECK_THROWS_AS(config_from_json(json{{"mode", "compare"}, {"model", {{"N", 20}}}}),
                  CapacityError);
}

TEST_CASE("homogeneous run: deterministic CSV, first value 0.5") {
  ScenarioConfig c;
  c.mode = Mode::Homogeneous;
  c.model = {8, 1.0, 1.0, 1.0};
  c.theta = kPi / 2;
  c.grid = {0.0, 60.0, 400};
  c.out_dir = scratch_dir("homog");
  const json manifest = run_scenario(c);

  const std::string csv = read_file(c.out_dir + "/homogeneous.csv");
  std::istringstream lines(csv);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == "t,sz0,purity,entropy,fidelity");
  CHECK(first.substr(0, 6) == "0,0.5,");

  // Re-run into a second directory: byte-identical data.
  ScenarioConfig c2 = c;
  c2.out_dir = scratch_dir("homog2");
  run_scenario(c2);
  CHECK(read_file(c2.out_dir + "/homogeneous.csv") == csv);

  // Parallel run equals sequential run exactly.
  ScenarioConfig c4 = c;
  c4.threads = 4;
  c4.out_dir = scratch_dir("homog4");
  run_scenario(c4);
  CHECK(read_file(c4.out_dir + "/homogeneous.csv") == csv);

  CHECK(manifest.at("outputs").size() == 1);  // manifest lists csv (itself excluded)
  std::filesystem::remove_all(c.out_dir);
  std::filesystem::remove_all(c2.out_dir);
  std::filesystem::remove_all(c4.out_dir);
}

TEST_CASE("compare mode reports oracle equivalence (N=6)") {
  ScenarioConfig c;
  c.mode = Mode::Compare;
  c.model = {6, 1.0, 1.0, 1.0};
  c.theta = kPi / 2;
  c.grid = {0.0, 20.0, 200};
  c.out_dir = scratch_dir("compare");
  const json manifest = run_scenario(c);
  CHECK(manifest.at("report").at("max_abs_sz0_diff").get<double>() < 1e-9);
  CHECK(manifest.at("report").at("max_abs_rho_diff").get<double>() < 1e-9);
  std::filesystem::remove_all(c.out_dir);
}

TEST_CASE("jc mode emits inversion columns") {
  ScenarioConfig c;
  c.mode = Mode::Jc;
  c.model = {100, 0.0, 0.1, 0.0};
  c.theta = 2.0 * std::asin(std::sqrt(9.0 / 100.0));
  c.grid = {0.0, 30.0, 300};
  c.out_dir = scratch_dir("jc");
  const json manifest = run_scenario(c);
  CHECK(manifest.at("report").contains("finite_n_deviation"));
  const std::string csv = read_file(c.out_dir + "/jc.csv");
  CHECK(csv.substr(0, csv.find('\n')) == "t,w_jc,w_closed_form");
  std::filesystem::remove_all(c.out_dir);
}

TEST_CASE("revivals mode detects the N=8 resonance revival") {
  ScenarioConfig c;
  c.mode = Mode::Revivals;
  c.model = {8, 1.0, 1.0, 1.0};
  c.theta = kPi / 2;
  c.grid = {0.0, 60.0, 3000};
  c.out_dir = scratch_dir("revivals");
  const json manifest = run_scenario(c);
  CHECK(manifest.at("report").at("n_peaks").get<int>() >= 1);
  std::filesystem::remove_all(c.out_dir);
}

TEST_CASE("fidelity scan finds the optimal phase at pi/2 or 3pi/2") {
  ScenarioConfig c;
  c.mode = Mode::FidelityScan;
  c.model = {15, 1.0, 1.0, 1.0};
  c.theta = kPi / 2;
  c.grid = {1.0, 40.0, 300};
  c.phi_points = 32;
  c.out_dir = scratch_dir("fscan");
  const json manifest = run_scenario(c);
  const double phi = manifest.at("report").at("argmax_phi").get<double>();
  const bool near_optimal = std::abs(phi - kPi / 2) < 0.25 || std::abs(phi - 3 * kPi / 2) < 0.25;
  CHECK(near_optimal);
  CHECK(manifest.at("report").at("max_fidelity").get<double>() > 0.9);
  std::filesystem::remove_all(c.out_dir);
}

TEST_CASE("inhomogeneous run records conservation drifts") {
  ScenarioConfig c;
  c.mode = Mode::Inhomogeneous;
  c.model = {6, 1.0, 1.0, 1.0};
  c.profile_kind = "exponential";
  c.alpha = 1.0;
  c.theta = kPi / 2;
  c.grid = {0.0, 10.0, 50};
  c.out_dir = scratch_dir("inhomog");
  const json manifest = run_scenario(c);
  CHECK(manifest.at("report").at("max_sz_total_drift").get<double>() < 1e-10);
  CHECK(manifest.at("report").at("max_energy_drift").get<double>() < 1e-10);
  std::filesystem::remove_all(c.out_dir);
}

TEST_CASE("sweep over N aggregates a linear fit") {
  ScenarioConfig c;
  c.mode = Mode::Sweep;
  c.sweep_axis = "N";
  c.sweep_values = {50, 70, 90};
  c.model = {8, 1.0, 1.0, 1.0};
  c.theta = kPi / 2;
  c.grid = {0.0, 60.0, 4000};
  c.out_dir = scratch_dir("sweepN");
  const json manifest = run_scenario(c);
  REQUIRE(manifest.at("report").contains("fit"));
  const double slope = manifest.at("report").at("fit").at("slope").get<double>();
  CHECK(std::abs(slope - kPi) / kPi < 0.05);
  std::filesystem::remove_all(c.out_dir);
}

TEST_CASE("sweep over alpha runs the ED engine per value") {
  ScenarioConfig c;
  c.mode = Mode::Sweep;
  c.sweep_axis = "alpha";
  c.sweep_values = {0.0, 5.0};
  c.model = {5, 1.0, 1.0, 1.0};
  c.profile_kind = "exponential";
  c.theta = kPi / 2;
  c.grid = {0.0, 10.0, 40};
  c.observables = {"sz0", "pbath"};
  c.out_dir = scratch_dir("sweepA");
  const json manifest = run_scenario(c);
  REQUIRE(manifest.at("report").at("runs").size() == 2);
  CHECK(std::filesystem::exists(c.out_dir + "/inhomogeneous_alpha_00.csv"));
  CHECK(std::filesystem::exists(c.out_dir + "/inhomogeneous_alpha_01.csv"));
  std::filesystem::remove_all(c.out_dir);
}

TEST_CASE("manifest checksums match file contents") {
  ScenarioConfig c;
  c.mode = Mode::Homogeneous;
  c.model = {4, 1.0, 1.0, 1.0};
  c.grid = {0.0, 5.0, 20};
  c.out_dir = scratch_dir("sums");
  const json manifest = run_scenario(c);
  for (const auto& entry : manifest.at("outputs")) {
    const std::string path = entry.at("path").get<std::string>();
    const std::string blob = read_file(path);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char ch : blob) {
      h ^= static_cast<unsigned char>(ch);
      h *= 0x100000001b3ull;
    }
    char hex[20];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    CHECK(entry.at("fnv1a64").get<std::string>() == hex);
    CHECK(entry.at("bytes").get<std::uint64_t>() == blob.size());
  }
  std::filesystem::remove_all(c.out_dir);
}
