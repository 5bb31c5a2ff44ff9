#include "progx/proposal.hpp"

#include "progx/labeling.hpp"

#include <algorithm>
#include <cmath>

namespace progx {
namespace {

std::vector<size_t> conditioned_support(const Instance& inst, const CompoundModel& compound,
                                        const DataMatrix& data, double eps) {
    std::vector<size_t> support;
    for (size_t p = 0; p < data.rows(); ++p)
        if (residual(inst, data, p) < eps && compound.distance(p) >= eps)
            support.push_back(p);
    return support;
}

struct Scored {
    Instance instance;
    double score;
};

// Iterated least-squares refit on the conditioned support, threshold
// descending from 2 eps to eps; keeps the best conditioned quality seen.
Scored refit_descent(const Instance& seed, double seed_score, const CompoundModel& compound,
                     const DataMatrix& data, const ProposalConfig& cfg) {
    Scored best{seed, seed_score};
    Instance current = seed;
    const int rounds = std::max(1, cfg.lo_refit_rounds);
    const size_t m = static_cast<size_t>(seed.model().minimal_sample_size);
    for (int r = 0; r < rounds; ++r) {
        const double t = rounds == 1 ? 1.0 : static_cast<double>(r) / (rounds - 1);
        const double threshold = 2.0 * cfg.epsilon - t * cfg.epsilon;
        std::vector<size_t> support;
        for (size_t p = 0; p < data.rows(); ++p)
            if (residual(current, data, p) < threshold &&
                compound.distance(p) >= cfg.epsilon)
                support.push_back(p);
        if (support.size() < m) break;
        auto cand = refit(current.class_id, data, support);
        if (!cand) break;
        const double q = quality_msac_conditioned(*cand, compound, data, cfg.epsilon);
        current = *cand;
        if (q > best.score) best = {current, q};
    }
    return best;
}

// Graph-cut selection: one binary labeling (take the hypothesis vs stay
// out) with the compound-conditioned MSAC contributions as data terms and
// Potts smoothness over the neighborhood graph, then refit on the selected
// conditioned inliers.
Scored graph_cut_select(const Instance& seed, double seed_score,
                        const CompoundModel& compound, const DataMatrix& data,
                        const NeighborhoodGraph& graph, const ProposalConfig& cfg) {
    Scored best{seed, seed_score};
    Instance current = seed;
    const double gamma_sq = msac_gamma(cfg.epsilon) * msac_gamma(cfg.epsilon);
    const size_t m = static_cast<size_t>(seed.model().minimal_sample_size);
    const size_t n = data.rows();
    for (int r = 0; r < 2; ++r) {
        LabelingProblem problem;
        problem.point_count = n;
        problem.label_count = 2;  // hypothesis, outlier
        problem.graph = &graph;
        problem.smoothness_weight = cfg.lo_spatial_weight;
        problem.label_cost = 0.0;
        problem.data_cost.assign(2 * n, 0.0);
        for (size_t p = 0; p < n; ++p) {
            const double rr = residual(current, data, p);
            const double rc = compound.distance(p);
            const double take =
                std::min(1.0, std::max(rr * rr / gamma_sq, 1.0 - rc * rc / gamma_sq));
            problem.cost(p, 0) = take;
            problem.cost(p, 1) = 1.0 - take;
        }
        Labeling init;
        init.assignment.assign(n, 1);
        const Labeling selected = alpha_expansion(problem, std::move(init));

        std::vector<size_t> support;
        for (size_t p = 0; p < n; ++p)
            if (selected.assignment[p] == 0 && compound.distance(p) >= cfg.epsilon)
                support.push_back(p);
        if (support.size() < m) break;
        auto cand = refit(current.class_id, data, support);
        if (!cand) break;
        const double q = quality_msac_conditioned(*cand, compound, data, cfg.epsilon);
        current = *cand;
        if (q > best.score)
            best = {current, q};
        else
            break;
    }
    return best;
}

Scored local_optimize(const Instance& seed, double seed_score, const CompoundModel& compound,
                      const DataMatrix& data, const NeighborhoodGraph& graph,
                      const ProposalConfig& cfg) {
    if (cfg.local_opt == ProposalConfig::LocalOpt::GraphCut)
        return graph_cut_select(seed, seed_score, compound, data, graph, cfg);
    return refit_descent(seed, seed_score, compound, data, cfg);
}

}  // namespace

size_t inner_iteration_bound(size_t inlier_count, size_t total, int m, double confidence,
                             size_t max_iterations) {
    if (total == 0 || inlier_count == 0) return max_iterations;
    const double ratio = static_cast<double>(inlier_count) / static_cast<double>(total);
    if (ratio >= 1.0) return 1;
    const double p_all_inlier = std::pow(ratio, m);
    if (p_all_inlier <= 0.0) return max_iterations;
    const double denom = std::log1p(-p_all_inlier);
    if (!(denom < 0.0)) return 1;  // p ~ 1: one iteration suffices
    const double k = std::ceil(std::log(1.0 - confidence) / denom);
    if (!std::isfinite(k) || k >= static_cast<double>(max_iterations)) return max_iterations;
    return std::max<size_t>(1, static_cast<size_t>(k));
}

ProposeResult propose(const DataMatrix& data, const NeighborhoodGraph& graph,
                      const CompoundModel& compound, ModelClassId cls,
                      const ProposalConfig& cfg, RandomEngine& rng) {
    ProposeResult result;
    const ModelClass& mc = model_class(cls);
    const size_t m = static_cast<size_t>(mc.minimal_sample_size);
    const size_t n = data.rows();
    if (n < m || m == 0) return result;

    size_t not_covered = 0;
    for (size_t p = 0; p < n; ++p)
        if (compound.distance(p) >= cfg.epsilon) ++not_covered;

    std::optional<Scored> best;
    size_t iteration_budget = cfg.max_inner_iterations;

    for (size_t it = 0; it < iteration_budget; ++it) {
        std::optional<std::vector<size_t>> sample;
        if (cfg.sampler == ProposalConfig::Sampler::Napsac) {
            sample = napsac_sample(graph, m, rng);
            if (!sample) continue;  // dead seed; retry with a new one
        } else {
            sample = uniform_sample(n, m, rng);
        }
        ++result.samples_drawn;

        auto inst = fit_minimal(cls, data, *sample);
        if (!inst) continue;  // degenerate samples still count as draws

        const double score = quality_msac_conditioned(*inst, compound, data, cfg.epsilon);
        if (!best || score > best->score) {
            Scored improved = local_optimize(*inst, score, compound, data, graph, cfg);
            if (!best || improved.score > best->score) best = std::move(improved);

            const size_t inliers =
                quality_ransac_conditioned(best->instance, compound, data, cfg.epsilon);
            iteration_budget =
                std::min(cfg.max_inner_iterations,
                         inner_iteration_bound(inliers, not_covered, mc.minimal_sample_size,
                                               cfg.inner_confidence,
                                               cfg.max_inner_iterations));
        }
    }

    if (!best) return result;
    auto support = conditioned_support(best->instance, compound, data, cfg.epsilon);
    if (support.size() < m + 1) return result;

    Proposal proposal;
    proposal.instance = std::move(best->instance);
    proposal.instance.state = Instance::State::Putative;
    proposal.score = best->score;
    proposal.support = std::move(support);
    proposal.samples_drawn = result.samples_drawn;
    result.proposal = std::move(proposal);
    return result;
}

}  // namespace progx
