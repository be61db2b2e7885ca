#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "errors.hpp"
#include "lab.hpp"
#include "util.hpp"

using namespace adsmax;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("adsmax_test_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string symmetric_zero_config(int subdivision, const std::string& extra) {
  // zeros at the four symmetric spoke midpoints, resolved via the mesh
  const SurfaceMesh s = build_genus2_surface(subdivision);
  const Octagon& o = Octagon::regular();
  std::string zeros = "[";
  for (int k = 0; k < 8; k += 2) {
    const int v = find_vertex_near(s, disk::midpoint(cplx(0, 0), o.corners[k]));
    zeros += (k ? ", [" : "[") + std::to_string(v) + ", 1]";
  }
  zeros += "]";
  return "{\"surface\": {\"type\": \"octagon8\", \"subdivision\": " +
         std::to_string(subdivision) + "}, \"qdiff\": {\"zeros\": " + zeros + "}" + extra + "}";
}

std::string file_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config parsing and validation errors") {
  CHECK_THROWS_AS(ExperimentConfig::from_json_text("not json"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json_text("{}"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json_text(
                      "{\"surface\": {\"type\": \"sphere\"}}"),
                  ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json_text(
                      "{\"surface\": {\"type\": \"octagon8\"}, \"ray\": {\"t_values\": [2, 1]}}"),
                  ConfigError);
  CHECK_THROWS_AS(
      ExperimentConfig::from_json_text(
          "{\"surface\": {\"type\": \"octagon8\"}, \"solver\": {\"tolerance\": -1}}"),
      ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json_text(
                      "{\"surface\": {\"type\": \"octagon8\"}, \"spectrum\": "
                      "{\"rep_l_path\": \"/nonexistent\", \"rep_r_path\": \"/nonexistent\"}}"),
                  ConfigError);
  const ExperimentConfig ok = ExperimentConfig::from_json_text(symmetric_zero_config(2, ""));
  CHECK(ok.subdivision == 2);
  CHECK(ok.qdiff.zeros.size() == 4);
}

TEST_CASE("unbalanced zeros fail at run time with a solvability message") {
  const fs::path dir = temp_dir("badzeros");
  const ExperimentConfig cfg = ExperimentConfig::from_json_text(
      "{\"surface\": {\"type\": \"octagon8\", \"subdivision\": 2}, "
      "\"qdiff\": {\"zeros\": [[2,1],[3,1],[4,1]]}, \"ray\": {\"t_values\": [0, 1]}, "
      "\"output_dir\": \"" + dir.string() + "\"}");
  CHECK_THROWS_WITH_AS(run_experiment(cfg, "", true), doctest::Contains("4g-4"), ConfigError);
}

TEST_CASE("ray run writes the advertised artifacts and passes its checks") {
  const fs::path dir = temp_dir("ray");
  const ExperimentConfig cfg = ExperimentConfig::from_json_text(symmetric_zero_config(
      3, ", \"ray\": {\"t_values\": [0, 0.5, 1, 2]}, \"output_dir\": \"" + dir.string() + "\""));
  const RunOutcome out = run_experiment(cfg, "", true);
  CHECK(out.all_pass);
  for (const char* f : {"manifest.json", "ray_report.csv", "ray_report.json", "rho.csv",
                        "surface_validation.json"})
    CHECK(fs::exists(dir / f));

  const std::string csv = file_bytes(dir / "ray_report.csv");
  CHECK(csv.rfind("t,lambda_max,lambda_min_away,min_phi,sup_ratio,entropy,width_bound\n", 0) == 0);

  const std::string rep = report_text(dir.string());
  CHECK(rep.find("Cor. 3.5") != std::string::npos);
  CHECK(rep.find("PASS") != std::string::npos);
}

TEST_CASE("torus validation run is labeled and passes") {
  const fs::path dir = temp_dir("torus");
  const ExperimentConfig cfg = ExperimentConfig::from_json_text(
      "{\"surface\": {\"type\": \"torus-validation\", \"subdivision\": 0}, "
      "\"ray\": {\"t_values\": [1, 4, 9]}, \"output_dir\": \"" + dir.string() + "\"}");
  const RunOutcome out = run_experiment(cfg, "", true);
  CHECK(out.all_pass);
  CHECK(file_bytes(dir / "surface_validation.json").find("outside the genus") !=
        std::string::npos);
}

TEST_CASE("spectrum run: identical reps report alpha = 1 and the beta identity") {
  const fs::path dir = temp_dir("spec");
  const fs::path rep_path = dir / "rep.json";
  {
    std::ofstream out(rep_path);
    out << octagon_representation().to_json_text();
  }
  const ExperimentConfig cfg = ExperimentConfig::from_json_text(
      "{\"surface\": {\"type\": \"octagon8\", \"subdivision\": 1}, "
      "\"spectrum\": {\"rep_l_path\": \"" + rep_path.string() + "\", \"rep_r_path\": \"" +
      rep_path.string() + "\", \"max_word_length\": 3}, \"output_dir\": \"" + dir.string() +
      "\"}");
  const RunOutcome out = run_experiment(cfg, "", true);
  CHECK(out.all_pass);
  CHECK(fs::exists(dir / "spectrum_table.csv"));
  const std::string sj = file_bytes(dir / "spectrum.json");
  CHECK(sj.find("\"alpha_hat\": 1.0") != std::string::npos);
  const std::string rep = report_text(dir.string());
  CHECK(rep.find("Prop. 2.6") != std::string::npos);
}

TEST_CASE("deterministic reruns produce byte-identical artifacts") {
  const fs::path d1 = temp_dir("det1");
  const fs::path d2 = temp_dir("det2");
  const std::string body = symmetric_zero_config(
      2, ", \"ray\": {\"t_values\": [0, 1, 2]}, \"entropy\": {\"word_radius\": 3}, "
         "\"dump_fields\": true");
  const ExperimentConfig cfg = ExperimentConfig::from_json_text(body);
  run_experiment(cfg, d1.string(), true);
  run_experiment(cfg, d2.string(), true);
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(d1)) {
    const auto name = entry.path().filename();
    CHECK(file_bytes(entry.path()) == file_bytes(d2 / name));
    ++compared;
  }
  CHECK(compared > 3);
}

TEST_CASE("report on an empty directory is a config error") {
  const fs::path dir = temp_dir("empty");
  CHECK_THROWS_AS(report_text(dir.string()), ConfigError);
}

TEST_CASE("validate-surface emits suggested symmetric zeros") {
  const ExperimentConfig cfg = ExperimentConfig::from_json_text(
      "{\"surface\": {\"type\": \"octagon8\", \"subdivision\": 2}}");
  std::string json;
  const ValidationReport r = validate_surface_config(cfg, &json);
  CHECK(r.all_ok());
  CHECK(json.find("suggested_zeros") != std::string::npos);
}
