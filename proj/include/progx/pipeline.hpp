#pragma once

#include "progx/geometry.hpp"
#include "progx/labeling.hpp"
#include "progx/neighborhood.hpp"
#include "progx/proposal.hpp"
#include "progx/scoring.hpp"
#include "progx/validation.hpp"

#include <atomic>
#include <cstdint>
#include <functional>
#include <vector>

namespace progx {

struct ClassConfig {
    ModelClassId id = ModelClassId::Line2D;
    double epsilon = 2.0;  // inlier-outlier threshold, scene units
};

struct ProgXConfig {
    double confidence = 0.95;          // mu
    std::vector<ClassConfig> classes;  // proposal rotation (round robin)
    double jaccard_epsilon = 0.1;      // eps_S: minimal Jaccard distance to accept
    double spatial_weight = 0.15;      // w_s
    double label_cost = 0.0;           // w_l
    size_t min_support = 0;            // per-class floor is max(this, m + 1)
    size_t max_proposals = 100;        // outer-iteration safety cap
    uint64_t seed = 0;
    ProposalConfig proposal;  // epsilon is taken from the class being proposed
    GraphConfig graph{GraphConfig::Mode::Knn, 0.0, 8};
    size_t minhash_k = 512;
    bool exact_jaccard = false;  // debug: exact Jaccard in the validation step
};

struct SnapshotRecord {
    size_t iteration = 0;
    std::vector<Instance> instances;
    std::vector<uint32_t> labels;  // outlier == instances.size()
    EnergyBreakdown energy;
    double remaining_inlier_bound = 0.0;  // max over classes of I-bar
    size_t cumulative_samples = 0;
    double wall_ms = 0.0;
};

enum class TerminationReason { ConfidenceReached, ProposalCap, Interrupted };

struct FittingResult {
    std::vector<Instance> instances;
    std::vector<uint32_t> labels;
    EnergyBreakdown energy;
    std::vector<SnapshotRecord> snapshots;
    TerminationReason termination = TerminationReason::ProposalCap;
    size_t total_samples = 0;
    double wall_ms = 0.0;
};

// Confidence-mu upper bound on the inlier count of a not-yet-found instance
// after k samples: (total - compound) * (1 - (1-mu)^(1/k))^(1/m).
double max_remaining_inliers(size_t total, size_t compound_inliers, int m, size_t k,
                             double confidence);

// Returning false interrupts the run after the current iteration.
using ProgressCallback = std::function<bool(const SnapshotRecord&)>;

// The Progressive-X loop: propose against the compound model, reject
// near-duplicates by min-hash Jaccard distance, integrate survivors with
// PEARL, and stop once no unseen instance can have enough inliers.
// Throws std::invalid_argument on empty input or an invalid configuration.
FittingResult run(const DataMatrix& data, const ProgXConfig& config,
                  const ProgressCallback& progress = {},
                  const std::atomic<bool>* cancel = nullptr);

}  // namespace progx
