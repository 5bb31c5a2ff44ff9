#include "progx_c.h"

#include "progx/metrics.hpp"
#include "progx/pipeline.hpp"
#include "progx/result_io.hpp"
#include "progx/scene.hpp"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

struct progx_scene {
    progx::Scene scene;
};

struct progx_config {
    progx::ProgXConfig cfg;
    progx_progress_fn progress = nullptr;
    void* user = nullptr;
};

struct progx_result {
    progx::FittingResult result;
    progx::ProgXConfig cfg;
};

namespace {

thread_local std::string g_last_error;

progx_status fail(progx_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

template <typename Fn>
progx_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const progx::ParseError& e) {
        return fail(PROGX_ERROR_PARSE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(PROGX_ERROR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(PROGX_ERROR_NO_MEMORY, "out of memory");
    } catch (const std::exception& e) {
        return fail(PROGX_ERROR_INTERNAL, e.what());
    } catch (...) {
        return fail(PROGX_ERROR_INTERNAL, "unknown error");
    }
}

progx::ModelClassId to_class_id(progx_model_class cls) {
    return static_cast<progx::ModelClassId>(static_cast<int>(cls));
}

}  // namespace

extern "C" {

const char* progx_version(void) { return "1.0.0"; }

const char* progx_status_name(progx_status status) {
    switch (status) {
        case PROGX_OK: return "ok";
        case PROGX_ERROR_INVALID_ARGUMENT: return "invalid argument";
        case PROGX_ERROR_IO: return "io error";
        case PROGX_ERROR_PARSE: return "parse error";
        case PROGX_ERROR_NO_MEMORY: return "out of memory";
        case PROGX_ERROR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* progx_last_error(void) { return g_last_error.c_str(); }

/* ---- scenes ------------------------------------------------------- */

progx_status progx_scene_load(const char* path, const char* format, progx_scene** out) {
    if (!path || !out) return fail(PROGX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::optional<progx::SceneFormat> fmt;
        if (format) {
            if (std::strcmp(format, "xy") == 0) fmt = progx::SceneFormat::XY;
            else if (std::strcmp(format, "xyz") == 0) fmt = progx::SceneFormat::XYZ;
            else if (std::strcmp(format, "corr") == 0) fmt = progx::SceneFormat::Corr;
            else return fail(PROGX_ERROR_INVALID_ARGUMENT, "unknown scene format");
        }
        auto handle = std::make_unique<progx_scene>();
        handle->scene = progx::load_scene(path, fmt);
        *out = handle.release();
        return PROGX_OK;
    });
}

progx_status progx_scene_save(const progx_scene* scene, const char* path) {
    if (!scene || !path) return fail(PROGX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        progx::save_scene(scene->scene, path);
        return PROGX_OK;
    });
}

progx_status progx_scene_gen_star(int lines, int points_per_line, double sigma,
                                  double outlier_ratio, const double bbox[4], uint64_t seed,
                                  progx_scene** out) {
    if (!out || !bbox) return fail(PROGX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        progx::RandomEngine rng(seed);
        auto handle = std::make_unique<progx_scene>();
        handle->scene = progx::gen_star(lines, points_per_line, sigma, outlier_ratio,
                                        {bbox[0], bbox[1], bbox[2], bbox[3]}, rng);
        handle->scene.meta.seed = seed;
        *out = handle.release();
        return PROGX_OK;
    });
}

progx_status progx_scene_gen_stair(int segments, int points_per_line, double sigma,
                                   double outlier_ratio, const double bbox[4], uint64_t seed,
                                   progx_scene** out) {
    if (!out || !bbox) return fail(PROGX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        progx::RandomEngine rng(seed);
        auto handle = std::make_unique<progx_scene>();
        handle->scene = progx::gen_stair(segments, points_per_line, sigma, outlier_ratio,
                                         {bbox[0], bbox[1], bbox[2], bbox[3]}, rng);
        handle->scene.meta.seed = seed;
        *out = handle.release();
        return PROGX_OK;
    });
}

size_t progx_scene_point_count(const progx_scene* scene) {
    return scene ? scene->scene.point_count() : 0;
}

int progx_scene_has_ground_truth(const progx_scene* scene) {
    return scene && !scene->scene.ground_truth.empty() ? 1 : 0;
}

int progx_scene_gt_cluster_count(const progx_scene* scene) {
    return scene ? scene->scene.ground_truth_clusters() : 0;
}

progx_status progx_scene_ground_truth(const progx_scene* scene, int* out, size_t capacity) {
    if (!scene || !out) return fail(PROGX_ERROR_INVALID_ARGUMENT, "null argument");
    const auto& gt = scene->scene.ground_truth;
    if (gt.empty()) return fail(PROGX_ERROR_INVALID_ARGUMENT, "scene has no ground truth");
    if (capacity < gt.size())
        return fail(PROGX_ERROR_INVALID_ARGUMENT, "buffer too small");
    std::memcpy(out, gt.data(), gt.size() * sizeof(int));
    return PROGX_OK;
}

void progx_scene_destroy(progx_scene* scene) { delete scene; }

/* ---- configuration ------------------------------------------------ */

progx_config* progx_config_create(void) { return new (std::nothrow) progx_config(); }

void progx_config_destroy(progx_config* config) { delete config; }

#define PROGX_CHECK_CONFIG(config) \
    if (!(config)) return fail(PROGX_ERROR_INVALID_ARGUMENT, "null config")

progx_status progx_config_add_class(progx_config* config, progx_model_class cls,
                                    double threshold) {
    PROGX_CHECK_CONFIG(config);
    if (!(threshold > 0.0))
        return fail(PROGX_ERROR_INVALID_ARGUMENT, "threshold must be positive");
    config->cfg.classes.push_back({to_class_id(cls), threshold});
    return PROGX_OK;
}

progx_status progx_config_set_confidence(progx_config* config, double confidence) {
    PROGX_CHECK_CONFIG(config);
    if (!(confidence > 0.0 && confidence < 1.0))
        return fail(PROGX_ERROR_INVALID_ARGUMENT, "confidence must be in (0,1)");
    config->cfg.confidence = confidence;
    return PROGX_OK;
}

progx_status progx_config_set_jaccard_epsilon(progx_config* config, double epsilon_s) {
    PROGX_CHECK_CONFIG(config);
    if (!(epsilon_s >= 0.0 && epsilon_s <= 1.0))
        return fail(PROGX_ERROR_INVALID_ARGUMENT, "jaccard epsilon must be in [0,1]");
    config->cfg.jaccard_epsilon = epsilon_s;
    return PROGX_OK;
}

progx_status progx_config_set_spatial_weight(progx_config* config, double weight) {
    PROGX_CHECK_CONFIG(config);
    if (weight < 0.0) return fail(PROGX_ERROR_INVALID_ARGUMENT, "negative weight");
    config->cfg.spatial_weight = weight;
    return PROGX_OK;
}

progx_status progx_config_set_label_cost(progx_config* config, double weight) {
    PROGX_CHECK_CONFIG(config);
    if (weight < 0.0) return fail(PROGX_ERROR_INVALID_ARGUMENT, "negative weight");
    config->cfg.label_cost = weight;
    return PROGX_OK;
}

progx_status progx_config_set_min_support(progx_config* config, size_t min_support) {
    PROGX_CHECK_CONFIG(config);
    config->cfg.min_support = min_support;
    return PROGX_OK;
}

progx_status progx_config_set_max_proposals(progx_config* config, size_t cap) {
    PROGX_CHECK_CONFIG(config);
    if (cap == 0) return fail(PROGX_ERROR_INVALID_ARGUMENT, "max_proposals must be >= 1");
    config->cfg.max_proposals = cap;
    return PROGX_OK;
}

progx_status progx_config_set_seed(progx_config* config, uint64_t seed) {
    PROGX_CHECK_CONFIG(config);
    config->cfg.seed = seed;
    return PROGX_OK;
}

progx_status progx_config_set_sampler(progx_config* config, const char* name) {
    PROGX_CHECK_CONFIG(config);
    if (!name) return fail(PROGX_ERROR_INVALID_ARGUMENT, "null sampler name");
    if (std::strcmp(name, "napsac") == 0)
        config->cfg.proposal.sampler = progx::ProposalConfig::Sampler::Napsac;
    else if (std::strcmp(name, "uniform") == 0)
        config->cfg.proposal.sampler = progx::ProposalConfig::Sampler::Uniform;
    else
        return fail(PROGX_ERROR_INVALID_ARGUMENT, "unknown sampler");
    return PROGX_OK;
}

progx_status progx_config_set_local_optimization(progx_config* config, const char* name) {
    PROGX_CHECK_CONFIG(config);
    if (!name) return fail(PROGX_ERROR_INVALID_ARGUMENT, "null local-optimization name");
    if (std::strcmp(name, "refit") == 0)
        config->cfg.proposal.local_opt = progx::ProposalConfig::LocalOpt::IteratedRefit;
    else if (std::strcmp(name, "graphcut") == 0)
        config->cfg.proposal.local_opt = progx::ProposalConfig::LocalOpt::GraphCut;
    else
        return fail(PROGX_ERROR_INVALID_ARGUMENT, "unknown local optimization");
    return PROGX_OK;
}

progx_status progx_config_set_inner_confidence(progx_config* config, double confidence) {
    PROGX_CHECK_CONFIG(config);
    if (!(confidence > 0.0 && confidence < 1.0))
        return fail(PROGX_ERROR_INVALID_ARGUMENT, "confidence must be in (0,1)");
    config->cfg.proposal.inner_confidence = confidence;
    return PROGX_OK;
}

progx_status progx_config_set_max_inner_iterations(progx_config* config, size_t iterations) {
    PROGX_CHECK_CONFIG(config);
    if (iterations == 0)
        return fail(PROGX_ERROR_INVALID_ARGUMENT, "iteration cap must be >= 1");
    config->cfg.proposal.max_inner_iterations = iterations;
    return PROGX_OK;
}

progx_status progx_config_set_neighborhood_grid(progx_config* config, double cell_size) {
    PROGX_CHECK_CONFIG(config);
    config->cfg.graph.mode = progx::GraphConfig::Mode::Grid;
    config->cfg.graph.cell_size = cell_size;
    return PROGX_OK;
}

progx_status progx_config_set_neighborhood_knn(progx_config* config, int k) {
    PROGX_CHECK_CONFIG(config);
    if (k < 1) return fail(PROGX_ERROR_INVALID_ARGUMENT, "k must be >= 1");
    config->cfg.graph.mode = progx::GraphConfig::Mode::Knn;
    config->cfg.graph.k = k;
    return PROGX_OK;
}

progx_status progx_config_set_minhash_k(progx_config* config, size_t k) {
    PROGX_CHECK_CONFIG(config);
    if (k == 0) return fail(PROGX_ERROR_INVALID_ARGUMENT, "minhash k must be >= 1");
    config->cfg.minhash_k = k;
    return PROGX_OK;
}

progx_status progx_config_set_exact_jaccard(progx_config* config, int enabled) {
    PROGX_CHECK_CONFIG(config);
    config->cfg.exact_jaccard = enabled != 0;
    return PROGX_OK;
}

progx_status progx_config_set_progress(progx_config* config, progx_progress_fn fn,
                                       void* user) {
    PROGX_CHECK_CONFIG(config);
    config->progress = fn;
    config->user = user;
    return PROGX_OK;
}

/* ---- fitting ------------------------------------------------------ */

progx_status progx_fit(const progx_scene* scene, const progx_config* config,
                       progx_result** out) {
    if (!scene || !config || !out) return fail(PROGX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        progx::ProgressCallback callback;
        if (config->progress) {
            progx_progress_fn fn = config->progress;
            void* user = config->user;
            callback = [fn, user](const progx::SnapshotRecord& snap) {
                return fn(snap.iteration, snap.instances.size(), snap.energy.total,
                          snap.remaining_inlier_bound, user) != 0;
            };
        }
        auto handle = std::make_unique<progx_result>();
        handle->cfg = config->cfg;
        handle->result = progx::run(scene->scene.data, config->cfg, callback);
        *out = handle.release();
        return PROGX_OK;
    });
}

/* ---- results ------------------------------------------------------ */

size_t progx_result_instance_count(const progx_result* result) {
    return result ? result->result.instances.size() : 0;
}

progx_status progx_result_instance(const progx_result* result, size_t index,
                                   progx_model_class* cls_out, double* params_out,
                                   size_t params_capacity, size_t* params_len_out) {
    if (!result) return fail(PROGX_ERROR_INVALID_ARGUMENT, "null result");
    if (index >= result->result.instances.size())
        return fail(PROGX_ERROR_INVALID_ARGUMENT, "instance index out of range");
    const progx::Instance& inst = result->result.instances[index];
    if (cls_out) *cls_out = static_cast<progx_model_class>(static_cast<int>(inst.class_id));
    if (params_len_out) *params_len_out = inst.params.size();
    if (params_out) {
        if (params_capacity < inst.params.size())
            return fail(PROGX_ERROR_INVALID_ARGUMENT, "params buffer too small");
        std::memcpy(params_out, inst.params.data(), inst.params.size() * sizeof(double));
    }
    return PROGX_OK;
}

progx_status progx_result_labels(const progx_result* result, int* out, size_t capacity) {
    if (!result || !out) return fail(PROGX_ERROR_INVALID_ARGUMENT, "null argument");
    const auto labels =
        progx::external_labels(result->result.labels, result->result.instances.size());
    if (capacity < labels.size())
        return fail(PROGX_ERROR_INVALID_ARGUMENT, "buffer too small");
    std::memcpy(out, labels.data(), labels.size() * sizeof(int));
    return PROGX_OK;
}

progx_status progx_result_energy(const progx_result* result, double out[4]) {
    if (!result || !out) return fail(PROGX_ERROR_INVALID_ARGUMENT, "null argument");
    out[0] = result->result.energy.data;
    out[1] = result->result.energy.smoothness;
    out[2] = result->result.energy.label;
    out[3] = result->result.energy.total;
    return PROGX_OK;
}

progx_termination progx_result_termination(const progx_result* result) {
    if (!result) return PROGX_TERMINATED_INTERRUPTED;
    switch (result->result.termination) {
        case progx::TerminationReason::ConfidenceReached: return PROGX_TERMINATED_CONFIDENCE;
        case progx::TerminationReason::ProposalCap: return PROGX_TERMINATED_PROPOSAL_CAP;
        case progx::TerminationReason::Interrupted: return PROGX_TERMINATED_INTERRUPTED;
    }
    return PROGX_TERMINATED_INTERRUPTED;
}

size_t progx_result_total_samples(const progx_result* result) {
    return result ? result->result.total_samples : 0;
}

double progx_result_wall_ms(const progx_result* result) {
    return result ? result->result.wall_ms : 0.0;
}

size_t progx_result_snapshot_count(const progx_result* result) {
    return result ? result->result.snapshots.size() : 0;
}

progx_status progx_result_snapshot_audit(const progx_result* result, size_t snapshot,
                                         const progx_scene* scene, double* out) {
    if (!result || !scene || !out)
        return fail(PROGX_ERROR_INVALID_ARGUMENT, "null argument");
    if (snapshot >= result->result.snapshots.size())
        return fail(PROGX_ERROR_INVALID_ARGUMENT, "snapshot index out of range");
    if (scene->scene.ground_truth.empty())
        return fail(PROGX_ERROR_INVALID_ARGUMENT, "scene has no ground truth");
    return guarded([&] {
        *out = progx::audit_snapshot(result->result.snapshots[snapshot],
                                     scene->scene.ground_truth);
        return PROGX_OK;
    });
}

progx_status progx_result_snapshot_instance_count(const progx_result* result,
                                                  size_t snapshot, size_t* out) {
    if (!result || !out) return fail(PROGX_ERROR_INVALID_ARGUMENT, "null argument");
    if (snapshot >= result->result.snapshots.size())
        return fail(PROGX_ERROR_INVALID_ARGUMENT, "snapshot index out of range");
    *out = result->result.snapshots[snapshot].instances.size();
    return PROGX_OK;
}

progx_status progx_result_write_json(const progx_result* result, int include_snapshots,
                                     const char* path) {
    if (!result || !path) return fail(PROGX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        progx::write_result_json(result->result, result->cfg, include_snapshots != 0, path);
        return PROGX_OK;
    });
}

progx_status progx_result_load_json(const char* path, progx_result** out) {
    if (!path || !out) return fail(PROGX_ERROR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto handle = std::make_unique<progx_result>();
        handle->result = progx::read_result_json(path);
        *out = handle.release();
        return PROGX_OK;
    });
}

progx_status progx_result_write_svg(const progx_result* result, const progx_scene* scene,
                                    const char* path) {
    if (!result || !scene || !path)
        return fail(PROGX_ERROR_INVALID_ARGUMENT, "null argument");
    if (scene->scene.point_count() != result->result.labels.size())
        return fail(PROGX_ERROR_INVALID_ARGUMENT, "scene/result size mismatch");
    return guarded([&] {
        const auto labels =
            progx::external_labels(result->result.labels, result->result.instances.size());
        progx::write_scene_svg(scene->scene, labels, path);
        return PROGX_OK;
    });
}

void progx_result_destroy(progx_result* result) { delete result; }

/* ---- evaluation ---------------------------------------------------- */

progx_status progx_evaluate(const progx_result* result, const progx_scene* scene,
                            progx_eval_report* out) {
    if (!result || !scene || !out)
        return fail(PROGX_ERROR_INVALID_ARGUMENT, "null argument");
    if (scene->scene.ground_truth.empty())
        return fail(PROGX_ERROR_INVALID_ARGUMENT, "scene has no ground truth");
    return guarded([&] {
        const progx::EvalReport report =
            progx::evaluate(result->result, scene->scene.ground_truth);
        out->misclassification_error = report.misclassification_error;
        out->false_negatives = report.false_negatives;
        out->false_positives = report.false_positives;
        out->instance_delta = report.instance_delta;
        out->time_ms = report.time_ms;
        return PROGX_OK;
    });
}

}  // extern "C"
