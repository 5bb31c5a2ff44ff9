#pragma once

#include "progx/geometry.hpp"
#include "progx/random.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace progx {

// Spatial adjacency over the data. Shared by NAPSAC sampling and the
// smoothness term of the labeling energy.
struct GraphConfig {
    enum class Mode { Grid, Knn };
    Mode mode = Mode::Grid;
    double cell_size = 0.0;  // Grid: <= 0 picks the default (bbox diagonal / 20)
    int k = 8;               // Knn
};

class NeighborhoodGraph {
public:
    NeighborhoodGraph() = default;
    NeighborhoodGraph(size_t n, std::vector<std::pair<uint32_t, uint32_t>> edges);

    size_t point_count() const { return n_; }
    size_t edge_count() const { return edges_.size(); }
    // Undirected edge list with i < j, sorted; identical for identical input.
    const std::vector<std::pair<uint32_t, uint32_t>>& edges() const { return edges_; }

    std::span<const uint32_t> neighbors(size_t i) const {
        return {adjacency_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }

private:
    size_t n_ = 0;
    std::vector<std::pair<uint32_t, uint32_t>> edges_;
    std::vector<size_t> offsets_;
    std::vector<uint32_t> adjacency_;
};

// Grid mode connects points sharing a cell or lying in adjacent cells
// (8/26-adjacency in 2/3 dimensions, generalized for correspondences);
// knn mode connects each point to its k nearest neighbors, symmetrized.
// Throws std::invalid_argument on empty input or bad parameters.
NeighborhoodGraph build_graph(const DataMatrix& points, const GraphConfig& config);

double default_grid_cell_size(const DataMatrix& points);

// NAPSAC: first index uniform, the rest drawn without replacement from the
// seed's neighborhood (2-hop fallback). nullopt when fewer than m-1 points
// are reachable within 2 hops; the caller retries with a new seed.
std::optional<std::vector<size_t>> napsac_sample(const NeighborhoodGraph& graph, size_t m,
                                                 RandomEngine& rng);

// Uniform m-subset of {0, ..., n-1}. Throws std::invalid_argument if m > n.
std::vector<size_t> uniform_sample(size_t n, size_t m, RandomEngine& rng);

}  // namespace progx
