#pragma once

#include "progx/geometry.hpp"
#include "progx/neighborhood.hpp"
#include "progx/random.hpp"
#include "progx/scoring.hpp"

#include <optional>
#include <vector>

namespace progx {

struct ProposalConfig {
    double epsilon = 2.0;                // inlier-outlier threshold
    double inner_confidence = 0.95;      // mu_in
    size_t max_inner_iterations = 5000;
    int lo_refit_rounds = 10;
    enum class Sampler { Napsac, Uniform } sampler = Sampler::Napsac;
    // Local optimization: iterated least-squares refit by default, or a
    // graph-cut inlier selection (binary maxflow over the neighborhood
    // graph with the compound-conditioned data terms) before each refit.
    enum class LocalOpt { IteratedRefit, GraphCut } local_opt = LocalOpt::IteratedRefit;
    double lo_spatial_weight = 0.1;  // smoothness of the graph-cut selection
};

struct Proposal {
    Instance instance;            // Putative
    double score;                 // compound-conditioned MSAC quality
    std::vector<size_t> support;  // residual < eps and compound distance >= eps
    size_t samples_drawn;
};

struct ProposeResult {
    std::optional<Proposal> proposal;  // nullopt: no model found
    size_t samples_drawn = 0;          // reported even on failure
};

// Standard RANSAC iteration bound for the requested confidence, clamped to
// [1, max_iterations]; returns max_iterations for a zero inlier ratio.
size_t inner_iteration_bound(size_t inlier_count, size_t total, int m, double confidence,
                             size_t max_iterations);

// Searches for one instance maximizing the compound-conditioned MSAC
// quality. Each best-so-far improvement triggers an iterated-refit local
// optimization with the threshold descending from 2 eps to eps. Fails when
// no hypothesis reaches m + 1 conditioned inliers.
ProposeResult propose(const DataMatrix& data, const NeighborhoodGraph& graph,
                      const CompoundModel& compound, ModelClassId cls,
                      const ProposalConfig& config, RandomEngine& rng);

}  // namespace progx
