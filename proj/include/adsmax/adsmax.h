/* adsmax — maximal-surface laboratory for GHMC anti-de Sitter 3-manifolds.
 *
 * C interface to the shared library. All functions return a status code;
 * adsmax_last_error() carries the detail message of the most recent failure
 * on the calling thread. Objects are opaque handles released with the
 * matching *_free function. Field buffers are caller-allocated arrays of
 * length adsmax_surface_vertex_count().
 */
#ifndef ADSMAX_H
#define ADSMAX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ADSMAX_API __declspec(dllexport)
#else
#define ADSMAX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum adsmax_status {
  ADSMAX_OK = 0,
  ADSMAX_ERR_INVALID_ARGUMENT = 1,
  ADSMAX_ERR_CONFIG = 2,
  ADSMAX_ERR_RESOURCE_LIMIT = 3,
  ADSMAX_ERR_SOLVER = 4,
  ADSMAX_ERR_DOMAIN = 5,
  ADSMAX_ERR_IO = 6,
  ADSMAX_ERR_INTERNAL = 7
} adsmax_status;

ADSMAX_API const char* adsmax_status_name(adsmax_status status);
ADSMAX_API const char* adsmax_last_error(void);
ADSMAX_API const char* adsmax_version(void);
ADSMAX_API void adsmax_string_free(char* s);

/* ---- surfaces ---- */

typedef struct adsmax_surface adsmax_surface;

ADSMAX_API adsmax_status adsmax_surface_build_octagon(int subdivision, adsmax_surface** out);
ADSMAX_API adsmax_status adsmax_surface_build_torus(int subdivision, adsmax_surface** out);
ADSMAX_API void adsmax_surface_free(adsmax_surface* s);

ADSMAX_API int adsmax_surface_vertex_count(const adsmax_surface* s);
ADSMAX_API int adsmax_surface_face_count(const adsmax_surface* s);
ADSMAX_API int adsmax_surface_euler_characteristic(const adsmax_surface* s);
ADSMAX_API adsmax_status adsmax_surface_total_area(const adsmax_surface* s, double* out);
/* generators a,b,c,d as 4 row-major 2x2 matrices (16 doubles); octagon only */
ADSMAX_API adsmax_status adsmax_surface_generators(const adsmax_surface* s, double out[16]);
ADSMAX_API adsmax_status adsmax_surface_mesh_json(const adsmax_surface* s, char** json_out);
/* validation report as JSON; all_ok set to 1 when every check passes */
ADSMAX_API adsmax_status adsmax_surface_validate(const adsmax_surface* s, char** json_out,
                                                 int* all_ok);
/* vertex id nearest to a disk point, within tol */
ADSMAX_API adsmax_status adsmax_surface_vertex_near(const adsmax_surface* s, double re, double im,
                                                    double tol, int* out);

/* ---- quadratic differential norm ---- */

ADSMAX_API adsmax_status adsmax_qdiff_synth(const adsmax_surface* s, const int* zero_vertices,
                                            const int* zero_orders, int n_zeros, double* rho_out);
ADSMAX_API adsmax_status adsmax_holomorphicity_residual(const adsmax_surface* s, const double* rho,
                                                        const int* zero_vertices, int n_zeros,
                                                        double exclusion_radius, double* out);

/* ---- Gauss-equation solver ---- */

typedef struct adsmax_solve_options {
  double tolerance;       /* max-norm of the pointwise residual; default 1e-11 when <= 0 */
  int max_iterations;     /* default 50 when <= 0 */
  int initial;            /* 0 zero, 1 bracket midpoint, 2 warm start */
  const double* warm_start; /* required when initial == 2 */
} adsmax_solve_options;

typedef struct adsmax_solve_stats {
  double residual_norm;
  int iterations;
  int bracket_low_ok;
  int bracket_high_ok;
  double bracket_high; /* constant super-solution value x_+ */
} adsmax_solve_stats;

ADSMAX_API adsmax_status adsmax_solve_gauss(const adsmax_surface* s, const double* rho, double t,
                                            const adsmax_solve_options* opts, double* u_out,
                                            adsmax_solve_stats* stats);
ADSMAX_API adsmax_status adsmax_residual_field(const adsmax_surface* s, const double* rho,
                                               double t, const double* u, double* out);
/* lower bound field log(t rho)/2 (-inf sentinel at zeros) and constant upper
 * bound log(x_+)/2 */
ADSMAX_API adsmax_status adsmax_analytic_bracket(const adsmax_surface* s, const double* rho,
                                                 double t, double* lower_out, double* upper_out);

/* ---- diagnostics ---- */

ADSMAX_API adsmax_status adsmax_principal_curvature(const adsmax_surface* s, const double* rho,
                                                    double t, const double* u, double* out);
ADSMAX_API adsmax_status adsmax_conformal_gap(const adsmax_surface* s, const double* rho, double t,
                                              const double* u, double* out);
/* applicable set to 0 when lambda_max < delta (hypothesis gate) */
ADSMAX_API adsmax_status adsmax_width_lower_bound(double lambda_max, double C, double delta,
                                                  double* radians_out, int* applicable);

/* ---- volume entropy ---- */

typedef struct adsmax_orbit_graph adsmax_orbit_graph;

ADSMAX_API adsmax_status adsmax_orbit_graph_build(const adsmax_surface* s, const double* u,
                                                  int word_radius, adsmax_orbit_graph** out);
ADSMAX_API void adsmax_orbit_graph_free(adsmax_orbit_graph* g);
ADSMAX_API int adsmax_orbit_graph_copy_count(const adsmax_orbit_graph* g);
/* computes distances on first call; frontier is the truncation-safe radius */
ADSMAX_API adsmax_status adsmax_orbit_distances(adsmax_orbit_graph* g, double* distances_out,
                                                int* n_inout, double* frontier_out);
ADSMAX_API adsmax_status adsmax_entropy_estimate(const double* distances, int n, double r_min,
                                                 double r_max, double* e_hat_out,
                                                 double* fit_residual_out);

/* ---- length spectrum / Hoelder exponent ---- */

/* rep: 4 generators, row-major 2x2 each (16 doubles) */
ADSMAX_API adsmax_status adsmax_translation_length(const double rep[16], const char* word,
                                                   double* out);
ADSMAX_API adsmax_status adsmax_enumerate_class_count(int max_len, int* count);
/* full report as JSON (alpha_hat, witness_word, monotone_history, table) */
ADSMAX_API adsmax_status adsmax_holder_estimate(const double rep_l[16], const double rep_r[16],
                                                int max_word_length, char** json_out);

/* ---- experiment orchestration ---- */

/* runs a config file; writes artifacts + manifest.json into the output
 * directory (out_dir overrides the config when non-NULL); checks_passed set
 * to 1 iff every requested invariant check passed */
ADSMAX_API adsmax_status adsmax_run(const char* config_path, const char* out_dir,
                                    int deterministic, int* checks_passed);
ADSMAX_API adsmax_status adsmax_report(const char* out_dir, char** text_out);
ADSMAX_API adsmax_status adsmax_validate_surface(const char* config_path, char** json_out,
                                                 int* all_ok);

#ifdef __cplusplus
}
#endif

#endif /* ADSMAX_H */
