/* Copyright 2026 The softplex Authors
 * SPDX-License-Identifier: Apache-2.0 */

/* C interface of libsoftplex. Every function returning sp_status leaves a
 * human-readable message retrievable with sp_last_error() on failure. Handles
 * are opaque and owned by the caller; strings returned through char** must be
 * released with sp_string_free(). */

#ifndef SOFTPLEX_SOFTPLEX_H
#define SOFTPLEX_SOFTPLEX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SOFTPLEX_BUILDING_LIBRARY)
#    define SOFTPLEX_API __declspec(dllexport)
#  else
#    define SOFTPLEX_API __declspec(dllimport)
#  endif
#else
#  define SOFTPLEX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sp_status {
  SP_OK = 0,
  SP_ERR_CONFIG = 1,     /* invalid configuration or malformed JSON */
  SP_ERR_INPUT = 2,      /* invalid argument */
  SP_ERR_REFUSED = 3,    /* memory guard or face cap */
  SP_ERR_IO = 4,         /* file could not be read or written */
  SP_ERR_DEGENERATE = 5, /* zero-variance sample */
  SP_ERR_INTERNAL = 6
} sp_status;

typedef enum sp_flavor { SP_RIPS = 0, SP_CECH = 1 } sp_flavor;

typedef struct sp_density sp_density;
typedef struct sp_cloud sp_cloud;
typedef struct sp_graph sp_graph;
typedef struct sp_complex sp_complex;
typedef struct sp_results sp_results;

SOFTPLEX_API const char* sp_version(void);
/* Message for the last failure on the calling thread; empty if none. */
SOFTPLEX_API const char* sp_last_error(void);
SOFTPLEX_API void sp_string_free(char* s);

/* Densities: JSON object, or "uniform"/"gaussian" in dimension d. */
SOFTPLEX_API sp_status sp_density_from_json(const char* json, sp_density** out);
SOFTPLEX_API sp_status sp_density_named(const char* name, size_t d, sp_density** out);
SOFTPLEX_API sp_status sp_density_eval(const sp_density* f, const double* x, size_t d, double* out);
SOFTPLEX_API sp_status sp_density_sup_norm(const sp_density* f, double* out);
SOFTPLEX_API size_t sp_density_dimension(const sp_density* f);
SOFTPLEX_API void sp_density_free(sp_density* f);

/* Point clouds. */
SOFTPLEX_API sp_status sp_sample_binomial(uint64_t n, const sp_density* f, uint64_t seed,
                                          sp_cloud** out);
SOFTPLEX_API sp_status sp_sample_poisson(double lambda, const sp_density* f, uint64_t seed,
                                         sp_cloud** out);
/* Row-major coordinates of n points in R^d; provenance is binomial(n). */
SOFTPLEX_API sp_status sp_cloud_from_points(const double* coords, size_t n, size_t d,
                                            sp_cloud** out);
SOFTPLEX_API size_t sp_cloud_size(const sp_cloud* cloud);
SOFTPLEX_API size_t sp_cloud_dimension(const sp_cloud* cloud);
SOFTPLEX_API const double* sp_cloud_coords(const sp_cloud* cloud);
/* CSV writers: `comment`, if not NULL, is written first as a "# " line. */
SOFTPLEX_API sp_status sp_cloud_write_csv(const sp_cloud* cloud, const char* path,
                                          const char* comment);
SOFTPLEX_API sp_status sp_leftmost_point(const sp_cloud* cloud, const uint32_t* vertices,
                                         size_t count, uint32_t* out);
SOFTPLEX_API void sp_cloud_free(sp_cloud* cloud);

/* Threshold graph with closed radius r. p1 < 0 disables edge thinning. */
SOFTPLEX_API sp_status sp_graph_build(const sp_cloud* cloud, double r, double p1, uint64_t seed,
                                      sp_graph** out);
SOFTPLEX_API size_t sp_graph_edge_count(const sp_graph* g);
/* Writes up to `capacity` edges as (i, j) pairs, i < j, sorted. */
SOFTPLEX_API sp_status sp_graph_edges(const sp_graph* g, uint32_t* pairs, size_t capacity);
SOFTPLEX_API sp_status sp_graph_write_csv(const sp_graph* g, const char* path,
                                          const char* comment);
SOFTPLEX_API void sp_graph_free(sp_graph* g);

/* Complexes. max_faces = 0 uses the default cap. */
SOFTPLEX_API sp_status sp_complex_build(const sp_graph* g, sp_flavor flavor, size_t kmax,
                                        uint64_t max_faces, sp_complex** out);
SOFTPLEX_API sp_status sp_complex_thin(const sp_complex* c, const double* rho, size_t length,
                                       uint64_t seed, sp_complex** out);
SOFTPLEX_API size_t sp_complex_kmax(const sp_complex* c);
SOFTPLEX_API size_t sp_complex_face_count(const sp_complex* c, size_t k);
/* Writes up to `capacity` faces of dimension k, (k+1) sorted vertices each. */
SOFTPLEX_API sp_status sp_complex_faces(const sp_complex* c, size_t k, uint32_t* out,
                                        size_t capacity);
/* Counts by leftmost point in a region (JSON, NULL for all of R^d). out_f holds kmax+1 values. */
SOFTPLEX_API sp_status sp_complex_face_counts(const sp_complex* c, const char* region_json,
                                              uint64_t* out_f, size_t capacity, int64_t* out_chi);
SOFTPLEX_API sp_status sp_complex_write_csv(const sp_complex* c, size_t k, const char* path,
                                            const char* comment);
SOFTPLEX_API void sp_complex_free(sp_complex* c);

SOFTPLEX_API sp_status sp_euler_characteristic(const uint64_t* f, size_t length, int64_t* out);
SOFTPLEX_API sp_status sp_retention_exponent(int k, int l, int j, int i, int64_t* out);
SOFTPLEX_API sp_status sp_min_enclosing_ball_radius(const double* coords, size_t count, size_t d,
                                                    double* out);

/* Constants. Request keys: kind (mu|nu|phi|theta), k, l, j, density, d, region,
 * samples, seed, shards. Reply: {value, stderr, samples, params}. */
SOFTPLEX_API sp_status sp_constants_estimate(const char* request_json, unsigned threads,
                                             char** out_json);
/* Regime check. Request keys: n, d, r or a (r^d = n^-a), k or l, rho or b (p_i = n^-b_i),
 * optional thresholds {sparse, growth, vanishing}. */
SOFTPLEX_API sp_status sp_regime_check(const char* request_json, char** out_json);

/* Experiments. Parses `text` (errors cite `source` with line and column), replaces
 * top-level keys with those of `overrides_json` (may be NULL), validates, and returns
 * the canonical config. */
SOFTPLEX_API sp_status sp_config_resolve(const char* text, const char* source,
                                         const char* overrides_json, char** out_json);
SOFTPLEX_API sp_status sp_experiment_run(const char* config_json, unsigned threads,
                                         sp_results** out);
SOFTPLEX_API sp_status sp_results_write_csv(const sp_results* r, const char* path, int timing);
SOFTPLEX_API sp_status sp_results_read_csv(const char* path, sp_results** out);
SOFTPLEX_API size_t sp_results_count(const sp_results* r);
SOFTPLEX_API size_t sp_results_kmax(const sp_results* r);
SOFTPLEX_API sp_status sp_results_row(const sp_results* r, size_t index, uint64_t* f,
                                      size_t capacity, int64_t* chi, uint64_t* n_points);
/* Config the results were produced with; SP_ERR_INPUT if unknown. */
SOFTPLEX_API sp_status sp_results_config(const sp_results* r, char** out_json);
/* CLT report. config_json may be NULL to use the config embedded in the results.
 * qq_path, if not NULL, receives theoretical,empirical quantile pairs. */
SOFTPLEX_API sp_status sp_experiment_report(const char* config_json, const sp_results* r,
                                            unsigned threads, const char* qq_path,
                                            char** out_json);
SOFTPLEX_API sp_status sp_experiment_depoisson(const char* config_json, unsigned threads,
                                               char** out_json);
SOFTPLEX_API void sp_results_free(sp_results* r);

/* Statistics helpers. mode 0: empirical; mode 1: predicted (mean, variance). */
SOFTPLEX_API sp_status sp_normalize(const double* x, size_t count, int mode, double mean,
                                    double variance, double* out);
SOFTPLEX_API sp_status sp_ks_statistic(const double* z, size_t count, double* out);
SOFTPLEX_API sp_status sp_moment_diagnostics(const double* z, size_t count, double* skewness,
                                             double* excess_kurtosis, double* jarque_bera);

#ifdef __cplusplus
}
#endif

#endif /* SOFTPLEX_SOFTPLEX_H */
