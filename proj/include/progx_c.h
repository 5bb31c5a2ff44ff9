/*
 * C API for the progx multi-model fitting library.
 *
 * All entry points return a progx_status (or a plain value where failure is
 * impossible); progx_last_error() holds a human-readable detail string for
 * the calling thread. Handles are opaque and must be released with the
 * matching *_destroy function.
 */
#ifndef PROGX_C_H
#define PROGX_C_H

#include <stddef.h>
#include <stdint.h>

#if defined(PROGX_BUILD_SHARED)
#define PROGX_API __attribute__((visibility("default")))
#else
#define PROGX_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum progx_status {
    PROGX_OK = 0,
    PROGX_ERROR_INVALID_ARGUMENT = 1,
    PROGX_ERROR_IO = 2,
    PROGX_ERROR_PARSE = 3,
    PROGX_ERROR_NO_MEMORY = 4,
    PROGX_ERROR_INTERNAL = 5
} progx_status;

typedef enum progx_model_class {
    PROGX_CLASS_LINE = 0,
    PROGX_CLASS_CIRCLE = 1,
    PROGX_CLASS_HOMOGRAPHY = 2,
    PROGX_CLASS_PLANE = 3,
    PROGX_CLASS_CYLINDER = 4
} progx_model_class;

typedef enum progx_termination {
    PROGX_TERMINATED_CONFIDENCE = 0,
    PROGX_TERMINATED_PROPOSAL_CAP = 1,
    PROGX_TERMINATED_INTERRUPTED = 2
} progx_termination;

typedef struct progx_scene progx_scene;
typedef struct progx_config progx_config;
typedef struct progx_result progx_result;

PROGX_API const char* progx_version(void);
PROGX_API const char* progx_status_name(progx_status status);
PROGX_API const char* progx_last_error(void);

/* ---- scenes ------------------------------------------------------- */

/* format: "xy", "xyz" or "corr"; NULL requires a column header in the file */
PROGX_API progx_status progx_scene_load(const char* path, const char* format,
                                        progx_scene** out);
PROGX_API progx_status progx_scene_save(const progx_scene* scene, const char* path);
PROGX_API progx_status progx_scene_gen_star(int lines, int points_per_line, double sigma,
                                            double outlier_ratio, const double bbox[4],
                                            uint64_t seed, progx_scene** out);
PROGX_API progx_status progx_scene_gen_stair(int segments, int points_per_line,
                                             double sigma, double outlier_ratio,
                                             const double bbox[4], uint64_t seed,
                                             progx_scene** out);
PROGX_API size_t progx_scene_point_count(const progx_scene* scene);
PROGX_API int progx_scene_has_ground_truth(const progx_scene* scene);
PROGX_API int progx_scene_gt_cluster_count(const progx_scene* scene);
PROGX_API progx_status progx_scene_ground_truth(const progx_scene* scene, int* out,
                                                size_t capacity);
PROGX_API void progx_scene_destroy(progx_scene* scene);

/* ---- configuration ------------------------------------------------ */

PROGX_API progx_config* progx_config_create(void);
PROGX_API void progx_config_destroy(progx_config* config);

PROGX_API progx_status progx_config_add_class(progx_config* config, progx_model_class cls,
                                              double threshold);
PROGX_API progx_status progx_config_set_confidence(progx_config* config, double confidence);
PROGX_API progx_status progx_config_set_jaccard_epsilon(progx_config* config,
                                                         double epsilon_s);
PROGX_API progx_status progx_config_set_spatial_weight(progx_config* config, double weight);
PROGX_API progx_status progx_config_set_label_cost(progx_config* config, double weight);
PROGX_API progx_status progx_config_set_min_support(progx_config* config,
                                                    size_t min_support);
PROGX_API progx_status progx_config_set_max_proposals(progx_config* config, size_t cap);
PROGX_API progx_status progx_config_set_seed(progx_config* config, uint64_t seed);
/* "napsac" or "uniform" */
PROGX_API progx_status progx_config_set_sampler(progx_config* config, const char* name);
/* "refit" (iterated least squares) or "graphcut" */
PROGX_API progx_status progx_config_set_local_optimization(progx_config* config,
                                                           const char* name);
PROGX_API progx_status progx_config_set_inner_confidence(progx_config* config,
                                                         double confidence);
PROGX_API progx_status progx_config_set_max_inner_iterations(progx_config* config,
                                                             size_t iterations);
/* cell_size <= 0 picks the default (bbox diagonal / 20) */
PROGX_API progx_status progx_config_set_neighborhood_grid(progx_config* config,
                                                          double cell_size);
PROGX_API progx_status progx_config_set_neighborhood_knn(progx_config* config, int k);
PROGX_API progx_status progx_config_set_minhash_k(progx_config* config, size_t k);
PROGX_API progx_status progx_config_set_exact_jaccard(progx_config* config, int enabled);

/* Per-iteration snapshot callback; return nonzero to continue, zero to
 * interrupt the run after the current iteration. */
typedef int (*progx_progress_fn)(size_t iteration, size_t instance_count, double energy,
                                 double remaining_inlier_bound, void* user);
PROGX_API progx_status progx_config_set_progress(progx_config* config, progx_progress_fn fn,
                                                 void* user);

/* ---- fitting ------------------------------------------------------ */

PROGX_API progx_status progx_fit(const progx_scene* scene, const progx_config* config,
                                 progx_result** out);

/* ---- results ------------------------------------------------------ */

PROGX_API size_t progx_result_instance_count(const progx_result* result);
PROGX_API progx_status progx_result_instance(const progx_result* result, size_t index,
                                             progx_model_class* cls_out, double* params_out,
                                             size_t params_capacity, size_t* params_len_out);
/* labels: 0 = outlier, instance index + 1 otherwise */
PROGX_API progx_status progx_result_labels(const progx_result* result, int* out,
                                           size_t capacity);
/* out = {data, smooth, label, total} */
PROGX_API progx_status progx_result_energy(const progx_result* result, double out[4]);
PROGX_API progx_termination progx_result_termination(const progx_result* result);
PROGX_API size_t progx_result_total_samples(const progx_result* result);
PROGX_API double progx_result_wall_ms(const progx_result* result);
PROGX_API size_t progx_result_snapshot_count(const progx_result* result);
/* Ratio of stored instances covering distinct ground-truth clusters at the
 * given snapshot (1.0 for an empty snapshot). */
PROGX_API progx_status progx_result_snapshot_audit(const progx_result* result,
                                                   size_t snapshot,
                                                   const progx_scene* scene, double* out);
PROGX_API progx_status progx_result_snapshot_instance_count(const progx_result* result,
                                                            size_t snapshot, size_t* out);
PROGX_API progx_status progx_result_write_json(const progx_result* result,
                                               int include_snapshots, const char* path);
PROGX_API progx_status progx_result_load_json(const char* path, progx_result** out);
PROGX_API progx_status progx_result_write_svg(const progx_result* result,
                                              const progx_scene* scene, const char* path);
PROGX_API void progx_result_destroy(progx_result* result);

/* ---- evaluation ---------------------------------------------------- */

typedef struct progx_eval_report {
    double misclassification_error;
    int false_negatives;
    int false_positives;
    int instance_delta;
    double time_ms;
} progx_eval_report;

PROGX_API progx_status progx_evaluate(const progx_result* result, const progx_scene* scene,
                                      progx_eval_report* out);

#ifdef __cplusplus
}
#endif

#endif /* PROGX_C_H */
