#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "entropy.hpp"
#include "spectrum.hpp"

namespace adsmax {

struct ExperimentConfig {
  enum class SurfaceType { Octagon8, TorusValidation };

  SurfaceType surface_type = SurfaceType::Octagon8;
  int subdivision = 3;
  QDiffSpec qdiff;
  bool has_qdiff = false;
  std::vector<double> t_values;
  bool has_ray = false;
  double solver_tolerance = 1e-11;
  int solver_max_iterations = 50;
  bool has_entropy = false;
  int word_radius = 4;
  std::array<double, 2> entropy_window = {0.5, 1.0};
  bool window_is_frontier_fraction = true;
  bool has_width = false;
  double width_C = 1.0;
  double width_delta = 0.5;
  bool has_spectrum = false;
  std::string rep_l_path, rep_r_path;
  int max_word_length = 4;
  double exclusion_radius = 0.3;
  bool dump_fields = false;
  bool export_mesh = false;
  std::string output_dir = "out";

  std::string raw_text;  // config file bytes (hashed into the manifest)

  static ExperimentConfig from_json_file(const std::string& path);
  static ExperimentConfig from_json_text(const std::string& text);
};

struct CheckRow {
  std::string claim;
  std::string ref;  // statement tag the row tests
  double measured = 0;
  double tolerance = 0;
  bool pass = false;
};

struct RunOutcome {
  bool all_pass = false;
  std::vector<CheckRow> checks;
  std::string output_dir;
  std::vector<std::string> artifacts;
};

// orchestrates the requested modules, writes CSV/JSON artifacts plus
// manifest.json; deterministic mode forces the single-threaded reference path
RunOutcome run_experiment(const ExperimentConfig& config, const std::string& out_override,
                          bool deterministic);

// human-readable per-claim verdict table from a run's manifest
std::string report_text(const std::string& out_dir);

// surface construction + validation for a config; returns the report and the
// JSON text written for consumers
ValidationReport validate_surface_config(const ExperimentConfig& config, std::string* json_out);

SurfaceMesh build_surface(const ExperimentConfig& config);

}  // namespace adsmax
