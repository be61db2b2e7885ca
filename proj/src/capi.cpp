#include "adsmax/adsmax.h"

#include <cstdlib>
#include <cstring>
#include <sstream>

#include "errors.hpp"
#include "lab.hpp"

using namespace adsmax;

namespace {

thread_local std::string g_last_error;

adsmax_status fail(adsmax_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <typename Fn>
adsmax_status guarded(Fn&& fn) {
  try {
    fn();
    return ADSMAX_OK;
  } catch (const ConfigError& e) {
    return fail(ADSMAX_ERR_CONFIG, e.what());
  } catch (const ResourceError& e) {
    return fail(ADSMAX_ERR_RESOURCE_LIMIT, e.what());
  } catch (const SolverError& e) {
    return fail(ADSMAX_ERR_SOLVER, e.what());
  } catch (const DomainError& e) {
    return fail(ADSMAX_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(ADSMAX_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(ADSMAX_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Eigen::VectorXd wrap(const double* data, int n) {
  return Eigen::Map<const Eigen::VectorXd>(data, n);
}

QDiffSpec make_spec(const int* zero_vertices, const int* zero_orders, int n_zeros) {
  QDiffSpec spec;
  for (int i = 0; i < n_zeros; ++i)
    spec.zeros.emplace_back(zero_vertices[i], zero_orders ? zero_orders[i] : 1);
  return spec;
}

FuchsianRep rep_from_raw(const double raw[16]) {
  FuchsianRep rep;
  for (int g = 0; g < 4; ++g)
    rep.generators[g] << raw[4 * g], raw[4 * g + 1], raw[4 * g + 2], raw[4 * g + 3];
  return rep;
}

}  // namespace

struct adsmax_surface {
  SurfaceMesh mesh;
  LaplaceOperator op;
};

struct adsmax_orbit_graph {
  LiftedGraph graph;
  bool solved = false;
  std::vector<OrbitDistance> distances;
};

extern "C" {

const char* adsmax_status_name(adsmax_status status) {
  switch (status) {
    case ADSMAX_OK: return "ok";
    case ADSMAX_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ADSMAX_ERR_CONFIG: return "config error";
    case ADSMAX_ERR_RESOURCE_LIMIT: return "resource limit";
    case ADSMAX_ERR_SOLVER: return "solver error";
    case ADSMAX_ERR_DOMAIN: return "domain error";
    case ADSMAX_ERR_IO: return "io error";
    case ADSMAX_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* adsmax_last_error(void) { return g_last_error.c_str(); }

const char* adsmax_version(void) { return "0.1.0"; }

void adsmax_string_free(char* s) { std::free(s); }

adsmax_status adsmax_surface_build_octagon(int subdivision, adsmax_surface** out) {
  if (!out) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    auto* s = new adsmax_surface;
    s->mesh = build_genus2_surface(subdivision);
    s->op = assemble_operators(s->mesh);
    *out = s;
  });
}

adsmax_status adsmax_surface_build_torus(int subdivision, adsmax_surface** out) {
  if (!out) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    auto* s = new adsmax_surface;
    s->mesh = build_torus_surface(subdivision);
    s->op = assemble_operators(s->mesh);
    *out = s;
  });
}

void adsmax_surface_free(adsmax_surface* s) { delete s; }

int adsmax_surface_vertex_count(const adsmax_surface* s) {
  return s ? s->mesh.vertex_count() : 0;
}

int adsmax_surface_face_count(const adsmax_surface* s) { return s ? s->mesh.face_count() : 0; }

int adsmax_surface_euler_characteristic(const adsmax_surface* s) {
  return s ? s->mesh.euler_characteristic() : 0;
}

adsmax_status adsmax_surface_total_area(const adsmax_surface* s, double* out) {
  if (!s || !out) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null argument");
  *out = s->mesh.total_area();
  return ADSMAX_OK;
}

adsmax_status adsmax_surface_generators(const adsmax_surface* s, double out[16]) {
  if (!s || !out) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null argument");
  if (!s->mesh.has_group)
    return fail(ADSMAX_ERR_DOMAIN, "surface carries no side-pairing group");
  for (int g = 0; g < 4; ++g) {
    const Mat2d& m = s->mesh.gens_real[g];
    out[4 * g] = m(0, 0);
    out[4 * g + 1] = m(0, 1);
    out[4 * g + 2] = m(1, 0);
    out[4 * g + 3] = m(1, 1);
  }
  return ADSMAX_OK;
}

adsmax_status adsmax_surface_mesh_json(const adsmax_surface* s, char** json_out) {
  if (!s || !json_out) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *json_out = dup_string(mesh_json(s->mesh)); });
}

adsmax_status adsmax_surface_validate(const adsmax_surface* s, char** json_out, int* all_ok) {
  if (!s) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null surface");
  return guarded([&] {
    const ValidationReport r = validate_surface(s->mesh);
    if (all_ok) *all_ok = r.all_ok() ? 1 : 0;
    if (json_out) {
      std::ostringstream os;
      os.precision(17);
      os << "{\"checks\": [";
      for (size_t i = 0; i < r.checks.size(); ++i) {
        const auto& c = r.checks[i];
        os << (i ? ", " : "") << "{\"name\": \"" << c.name << "\", \"pass\": "
           << (c.pass ? "true" : "false") << ", \"measured\": " << c.measured
           << ", \"tolerance\": " << c.tolerance << "}";
      }
      os << "], \"all_ok\": " << (r.all_ok() ? "true" : "false") << "}";
      *json_out = dup_string(os.str());
    }
  });
}

adsmax_status adsmax_surface_vertex_near(const adsmax_surface* s, double re, double im, double tol,
                                         int* out) {
  if (!s || !out) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = find_vertex_near(s->mesh, cplx(re, im), tol); });
}

adsmax_status adsmax_qdiff_synth(const adsmax_surface* s, const int* zero_vertices,
                                 const int* zero_orders, int n_zeros, double* rho_out) {
  if (!s || !rho_out || (n_zeros > 0 && !zero_vertices))
    return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const Eigen::VectorXd rho =
        synth_qdiff_norm(s->mesh, s->op, make_spec(zero_vertices, zero_orders, n_zeros));
    Eigen::Map<Eigen::VectorXd>(rho_out, rho.size()) = rho;
  });
}

adsmax_status adsmax_holomorphicity_residual(const adsmax_surface* s, const double* rho,
                                             const int* zero_vertices, int n_zeros,
                                             double exclusion_radius, double* out) {
  if (!s || !rho || !out) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = holomorphicity_residual(s->mesh, s->op, wrap(rho, s->mesh.vertex_count()),
                                   make_spec(zero_vertices, nullptr, n_zeros), exclusion_radius);
  });
}

adsmax_status adsmax_solve_gauss(const adsmax_surface* s, const double* rho, double t,
                                 const adsmax_solve_options* opts, double* u_out,
                                 adsmax_solve_stats* stats) {
  if (!s || !rho || !u_out) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    SolveOptions so;
    if (opts) {
      if (opts->tolerance > 0) so.tolerance = opts->tolerance;
      if (opts->max_iterations > 0) so.max_iterations = opts->max_iterations;
      so.initial = opts->initial == 1   ? InitialGuess::BracketMidpoint
                   : opts->initial == 2 ? InitialGuess::WarmStart
                                        : InitialGuess::Zero;
      if (so.initial == InitialGuess::WarmStart) {
        if (!opts->warm_start) throw ConfigError("warm start requested without a field");
        so.warm_start = wrap(opts->warm_start, s->mesh.vertex_count());
      }
    }
    const SolveResult r = solve_gauss(s->mesh, s->op, wrap(rho, s->mesh.vertex_count()), t, so);
    Eigen::Map<Eigen::VectorXd>(u_out, r.u.size()) = r.u;
    if (stats) {
      stats->residual_norm = r.residual_norm;
      stats->iterations = r.iterations;
      stats->bracket_low_ok = r.bracket_low_ok ? 1 : 0;
      stats->bracket_high_ok = r.bracket_high_ok ? 1 : 0;
      stats->bracket_high = r.bracket_high;
    }
  });
}

adsmax_status adsmax_residual_field(const adsmax_surface* s, const double* rho, double t,
                                    const double* u, double* out) {
  if (!s || !rho || !u || !out) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const int n = s->mesh.vertex_count();
    const Eigen::VectorXd r = residual_field(s->mesh, s->op, wrap(rho, n), t, wrap(u, n));
    Eigen::Map<Eigen::VectorXd>(out, n) = r;
  });
}

adsmax_status adsmax_analytic_bracket(const adsmax_surface* s, const double* rho, double t,
                                      double* lower_out, double* upper_out) {
  if (!s || !rho || !lower_out || !upper_out)
    return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const AnalyticBracket b = analytic_bracket(wrap(rho, s->mesh.vertex_count()), t);
    Eigen::Map<Eigen::VectorXd>(lower_out, b.lower.size()) = b.lower;
    *upper_out = b.upper;
  });
}

adsmax_status adsmax_principal_curvature(const adsmax_surface* s, const double* rho, double t,
                                         const double* u, double* out) {
  if (!s || !rho || !u || !out) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const int n = s->mesh.vertex_count();
    Eigen::Map<Eigen::VectorXd>(out, n) = principal_curvature(wrap(rho, n), t, wrap(u, n));
  });
}

adsmax_status adsmax_conformal_gap(const adsmax_surface* s, const double* rho, double t,
                                   const double* u, double* out) {
  if (!s || !rho || !u || !out) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const int n = s->mesh.vertex_count();
    Eigen::Map<Eigen::VectorXd>(out, n) = conformal_gap(wrap(rho, n), t, wrap(u, n));
  });
}

adsmax_status adsmax_width_lower_bound(double lambda_max, double C, double delta,
                                       double* radians_out, int* applicable) {
  if (!radians_out || !applicable) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const WidthBound w = width_lower_bound(lambda_max, C, delta);
    *applicable = w.applicable ? 1 : 0;
    *radians_out = w.applicable ? w.radians : 0.0;
  });
}

adsmax_status adsmax_orbit_graph_build(const adsmax_surface* s, const double* u, int word_radius,
                                       adsmax_orbit_graph** out) {
  if (!s || !u || !out) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto* g = new adsmax_orbit_graph;
    g->graph = build_orbit_graph(s->mesh, wrap(u, s->mesh.vertex_count()), word_radius);
    *out = g;
  });
}

void adsmax_orbit_graph_free(adsmax_orbit_graph* g) { delete g; }

int adsmax_orbit_graph_copy_count(const adsmax_orbit_graph* g) {
  return g ? static_cast<int>(g->graph.words.size()) : 0;
}

adsmax_status adsmax_orbit_distances(adsmax_orbit_graph* g, double* distances_out, int* n_inout,
                                     double* frontier_out) {
  if (!g || !n_inout) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    if (!g->solved) {
      g->distances = orbit_distances(g->graph);
      g->solved = true;
    }
    const int n = static_cast<int>(g->distances.size());
    if (distances_out) {
      if (*n_inout < n) throw ConfigError("distance buffer too small");
      for (int i = 0; i < n; ++i) distances_out[i] = g->distances[i].distance;
    }
    *n_inout = n;
    if (frontier_out) *frontier_out = g->graph.frontier_radius;
  });
}

adsmax_status adsmax_entropy_estimate(const double* distances, int n, double r_min, double r_max,
                                      double* e_hat_out, double* fit_residual_out) {
  if (!distances || !e_hat_out) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const EntropyEstimate e =
        entropy_estimate(std::vector<double>(distances, distances + n), r_min, r_max);
    *e_hat_out = e.e_hat;
    if (fit_residual_out) *fit_residual_out = e.fit_residual;
  });
}

adsmax_status adsmax_translation_length(const double rep[16], const char* word, double* out) {
  if (!rep || !word || !out) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = translation_length(rep_from_raw(rep), word); });
}

adsmax_status adsmax_enumerate_class_count(int max_len, int* count) {
  if (!count) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *count = static_cast<int>(enumerate_classes(max_len).size()); });
}

adsmax_status adsmax_holder_estimate(const double rep_l[16], const double rep_r[16],
                                     int max_word_length, char** json_out) {
  if (!rep_l || !rep_r || !json_out) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const HolderReport r =
        holder_estimate(rep_from_raw(rep_l), rep_from_raw(rep_r), max_word_length);
    std::ostringstream os;
    os.precision(17);
    os << "{\"alpha_hat\": " << r.alpha_hat << ", \"witness_word\": \"" << r.witness_word
       << "\", \"max_word_length\": " << r.max_word_length << ", \"monotone_history\": [";
    for (size_t i = 0; i < r.monotone_history.size(); ++i)
      os << (i ? ", " : "") << r.monotone_history[i];
    os << "], \"table\": [";
    for (size_t i = 0; i < r.table.size(); ++i) {
      const auto& row = r.table[i];
      os << (i ? ", " : "") << "{\"word\": \"" << row.word << "\", \"ell_l\": " << row.ell_l
         << ", \"ell_r\": " << row.ell_r << ", \"min_ratio\": " << row.min_ratio
         << ", \"beta\": " << row.beta << ", \"beta_star\": " << row.beta_star << "}";
    }
    os << "]}";
    *json_out = dup_string(os.str());
  });
}

adsmax_status adsmax_run(const char* config_path, const char* out_dir, int deterministic,
                         int* checks_passed) {
  if (!config_path) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null config path");
  return guarded([&] {
    const ExperimentConfig cfg = ExperimentConfig::from_json_file(config_path);
    const RunOutcome outcome =
        run_experiment(cfg, out_dir ? std::string(out_dir) : std::string(), deterministic != 0);
    if (checks_passed) *checks_passed = outcome.all_pass ? 1 : 0;
  });
}

adsmax_status adsmax_report(const char* out_dir, char** text_out) {
  if (!out_dir || !text_out) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *text_out = dup_string(report_text(out_dir)); });
}

adsmax_status adsmax_validate_surface(const char* config_path, char** json_out, int* all_ok) {
  if (!config_path) return fail(ADSMAX_ERR_INVALID_ARGUMENT, "null config path");
  return guarded([&] {
    const ExperimentConfig cfg = ExperimentConfig::from_json_file(config_path);
    std::string text;
    const ValidationReport r = validate_surface_config(cfg, &text);
    if (all_ok) *all_ok = r.all_ok() ? 1 : 0;
    if (json_out) *json_out = dup_string(text);
  });
}

}  // extern "C"
