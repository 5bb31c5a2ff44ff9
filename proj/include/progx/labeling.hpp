#pragma once

#include "progx/geometry.hpp"
#include "progx/neighborhood.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace progx {

// Directed s-t flow network with nonnegative capacities.
class FlowNetwork {
public:
    FlowNetwork(size_t node_count, size_t source, size_t sink);

    // Throws std::invalid_argument on negative capacity, arcs into the
    // source or out of the sink.
    void add_arc(size_t from, size_t to, double capacity);

    size_t node_count() const { return head_.size(); }
    size_t source() const { return source_; }
    size_t sink() const { return sink_; }

    struct Result {
        double flow = 0.0;
        std::vector<uint8_t> source_side;  // min-cut partition, 1 = source side
    };

    // Dinic's algorithm; consumes the stored capacities.
    Result maxflow();

private:
    bool bfs_levels();
    double dfs_push(size_t node, double limit);

    struct Arc {
        uint32_t to;
        double cap;
    };
    std::vector<Arc> arcs_;  // arc 2i and its reverse 2i+1
    std::vector<std::vector<uint32_t>> head_;
    std::vector<int> level_;
    std::vector<uint32_t> iter_;
    size_t source_, sink_;
};

struct EnergyBreakdown {
    double data = 0.0;
    double smoothness = 0.0;
    double label = 0.0;
    double total = 0.0;
};

// Labeling energy: data terms per point, Potts smoothness over graph edges,
// and a constant cost per non-outlier label in use. The outlier label is
// the last column of the data-cost matrix.
struct LabelingProblem {
    size_t point_count = 0;
    size_t label_count = 0;           // includes the outlier label
    std::vector<double> data_cost;    // point * label_count + label
    const NeighborhoodGraph* graph = nullptr;
    double smoothness_weight = 0.0;   // w_s
    double label_cost = 0.0;          // w_l

    size_t outlier_label() const { return label_count - 1; }
    double cost(size_t p, size_t l) const { return data_cost[p * label_count + l]; }
    double& cost(size_t p, size_t l) { return data_cost[p * label_count + l]; }
};

struct Labeling {
    std::vector<uint32_t> assignment;
    EnergyBreakdown energy;
};

EnergyBreakdown energy(const LabelingProblem& problem, std::span<const uint32_t> assignment);

// Cycles expansion moves over all labels until no move reduces the energy.
// Label costs enter each binary subproblem through one auxiliary node per
// currently-used label. Never returns a higher energy than the input.
Labeling alpha_expansion(const LabelingProblem& problem, Labeling initial);

struct PearlParams {
    std::array<double, 6> epsilon_by_class{};  // indexed by ModelClassId
    double outlier_cost = 0.0;                 // typically epsilon^2
    double smoothness_weight = 0.0;
    double label_cost = 0.0;
    size_t min_support = 0;  // per-instance floor is max(min_support, m + 1)
    int max_rounds = 20;
    double convergence_rel = 1e-6;
};

struct PearlResult {
    std::vector<Instance> instances;
    Labeling labeling;  // outlier label == instances.size()
};

// PEARL: alternate alpha-expansion, per-instance refit and pruning of
// instances that are under-supported or whose removal lowers the energy.
PearlResult pearl(std::vector<Instance> active, const DataMatrix& data,
                  const NeighborhoodGraph& graph, const PearlParams& params,
                  Labeling initial);

}  // namespace progx
