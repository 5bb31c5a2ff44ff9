#include "progx/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace progx {
namespace {

void validate_config(const DataMatrix& data, const ProgXConfig& cfg) {
    if (data.rows() == 0) throw std::invalid_argument("run: empty input");
    if (cfg.classes.empty()) throw std::invalid_argument("run: class list empty");
    if (!(cfg.confidence > 0.0 && cfg.confidence < 1.0))
        throw std::invalid_argument("run: confidence must be in (0,1)");
    if (!(cfg.jaccard_epsilon >= 0.0 && cfg.jaccard_epsilon <= 1.0))
        throw std::invalid_argument("run: jaccard epsilon must be in [0,1]");
    if (cfg.spatial_weight < 0.0 || cfg.label_cost < 0.0)
        throw std::invalid_argument("run: negative energy weight");
    if (cfg.max_proposals == 0) throw std::invalid_argument("run: max_proposals must be >= 1");
    for (const auto& cc : cfg.classes) {
        if (!(cc.epsilon > 0.0)) throw std::invalid_argument("run: threshold must be positive");
        const ModelClass& mc = model_class(cc.id);
        if (cc.id == ModelClassId::Outlier)
            throw std::invalid_argument("run: outlier is not a proposable class");
        if (data.cols() < static_cast<size_t>(mc.datum_width))
            throw std::invalid_argument(std::string("run: data has too few columns for ") +
                                        mc.name);
    }
}

double class_epsilon(const ProgXConfig& cfg, ModelClassId id) {
    for (const auto& cc : cfg.classes)
        if (cc.id == id) return cc.epsilon;
    return 0.0;
}

}  // namespace

double max_remaining_inliers(size_t total, size_t compound_inliers, int m, size_t k,
                             double confidence) {
    if (compound_inliers >= total) return 0.0;
    const double remaining = static_cast<double>(total - compound_inliers);
    const double inv_k = 1.0 / static_cast<double>(std::max<size_t>(k, 1));
    const double p = 1.0 - std::pow(1.0 - confidence, inv_k);
    return remaining * std::pow(p, 1.0 / static_cast<double>(m));
}

FittingResult run(const DataMatrix& data, const ProgXConfig& cfg,
                  const ProgressCallback& progress, const std::atomic<bool>* cancel) {
    validate_config(data, cfg);
    const auto start = std::chrono::steady_clock::now();
    auto elapsed_ms = [&start] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
            .count();
    };

    const size_t n = data.rows();
    const NeighborhoodGraph graph = build_graph(data, cfg.graph);
    RandomEngine rng(cfg.seed);
    const MinHasher hasher(cfg.minhash_k);

    PearlParams pearl_params;
    double outlier_cost = 0.0;
    for (const auto& cc : cfg.classes) {
        pearl_params.epsilon_by_class[static_cast<int>(cc.id)] = cc.epsilon;
        outlier_cost = std::max(outlier_cost, cc.epsilon * cc.epsilon);
    }
    pearl_params.outlier_cost = outlier_cost;
    pearl_params.smoothness_weight = cfg.spatial_weight;
    pearl_params.label_cost = cfg.label_cost;
    pearl_params.min_support = cfg.min_support;

    CompoundModel compound(data);
    std::vector<Instance> active;
    Labeling labeling;
    labeling.assignment.assign(n, 0);  // outlier of the empty instance set
    labeling.energy.data = outlier_cost * static_cast<double>(n);
    labeling.energy.total = labeling.energy.data;

    PreferenceSet compound_pref(n);
    MinHashSignature compound_sig = hasher.signature(compound_pref);

    auto rebuild_compound = [&] {
        std::vector<double> eps;
        eps.reserve(active.size());
        compound_pref.clear();
        for (const auto& inst : active) {
            const double e = class_epsilon(cfg, inst.class_id);
            eps.push_back(e);
            compound_pref |= preference_set(inst, data, e);
        }
        compound.rebuild(active, eps);
        compound_sig = hasher.signature(compound_pref);
    };

    FittingResult result;
    result.termination = TerminationReason::ProposalCap;
    size_t cumulative_samples = 0;

    for (size_t iteration = 1; iteration <= cfg.max_proposals; ++iteration) {
        const ClassConfig cls = cfg.classes[(iteration - 1) % cfg.classes.size()];

        ProposalConfig prop_cfg = cfg.proposal;
        prop_cfg.epsilon = cls.epsilon;
        const ProposeResult proposed = propose(data, graph, compound, cls.id, prop_cfg, rng);
        cumulative_samples += proposed.samples_drawn;

        if (cancel && cancel->load(std::memory_order_relaxed)) {
            result.termination = TerminationReason::Interrupted;
            break;
        }

        if (proposed.proposal) {
            const PreferenceSet prop_pref =
                preference_set(proposed.proposal->instance, data, cls.epsilon);
            const Validation verdict =
                cfg.exact_jaccard
                    ? validate(prop_pref, compound_pref, cfg.jaccard_epsilon, hasher, true)
                    : validate(hasher.signature(prop_pref), compound_sig,
                               cfg.jaccard_epsilon);
            if (verdict == Validation::Accept) {
                // Integrate: the outlier label index grows by one with the
                // putative instance appended.
                const uint32_t old_outlier = static_cast<uint32_t>(active.size());
                active.push_back(proposed.proposal->instance);
                Labeling init = labeling;
                for (auto& l : init.assignment)
                    if (l == old_outlier) l = old_outlier + 1;
                PearlResult optimized =
                    pearl(std::move(active), data, graph, pearl_params, std::move(init));
                active = std::move(optimized.instances);
                labeling = std::move(optimized.labeling);
                rebuild_compound();
            }
        }

        SnapshotRecord snap;
        snap.iteration = iteration;
        snap.instances = active;
        snap.labels = labeling.assignment;
        snap.energy = labeling.energy;
        snap.cumulative_samples = cumulative_samples;
        snap.wall_ms = elapsed_ms();

        bool confident = true;
        double bound = 0.0;
        for (const auto& cc : cfg.classes) {
            const int m = model_class(cc.id).minimal_sample_size;
            const double ibar = max_remaining_inliers(n, compound.covered_count(), m,
                                                      std::max<size_t>(cumulative_samples, 1),
                                                      cfg.confidence);
            bound = std::max(bound, ibar);
            const double floor = static_cast<double>(
                std::max<size_t>(static_cast<size_t>(m) + 1, cfg.min_support));
            if (ibar >= floor) confident = false;
        }
        snap.remaining_inlier_bound = bound;
        result.snapshots.push_back(std::move(snap));

        if (progress && !progress(result.snapshots.back())) {
            result.termination = TerminationReason::Interrupted;
            break;
        }
        if (cancel && cancel->load(std::memory_order_relaxed)) {
            result.termination = TerminationReason::Interrupted;
            break;
        }
        if (confident) {
            result.termination = TerminationReason::ConfidenceReached;
            break;
        }
    }

    result.instances = active;
    result.labels = labeling.assignment;
    result.energy = labeling.energy;
    result.total_samples = cumulative_samples;
    result.wall_ms = elapsed_ms();
    return result;
}

}  // namespace progx
