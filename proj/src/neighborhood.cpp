#include "progx/neighborhood.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace progx {
namespace {

struct CellKey {
    std::array<int64_t, 4> c{};
    bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
    size_t operator()(const CellKey& k) const {
        uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (int64_t v : k.c) {
            h ^= static_cast<uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<size_t>(h);
    }
};

void normalize_edges(std::vector<std::pair<uint32_t, uint32_t>>& edges) {
    for (auto& e : edges)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
}

std::vector<std::pair<uint32_t, uint32_t>> build_grid_edges(const DataMatrix& pts,
                                                            double cell_size) {
    const size_t n = pts.rows();
    const int dim = static_cast<int>(pts.spatial_cols());

    std::unordered_map<CellKey, std::vector<uint32_t>, CellKeyHash> cells;
    cells.reserve(n);
    auto key_of = [&](size_t i) {
        CellKey key;
        const auto row = pts.row(i);
        for (int d = 0; d < dim; ++d)
            key.c[d] = static_cast<int64_t>(std::floor(row[d] / cell_size));
        return key;
    };
    for (size_t i = 0; i < n; ++i) cells[key_of(i)].push_back(static_cast<uint32_t>(i));

    // Offsets in {-1,0,1}^dim whose first nonzero component is positive:
    // each unordered cell pair is visited exactly once.
    std::vector<std::array<int, 4>> offsets;
    const int total = static_cast<int>(std::pow(3, dim));
    for (int code = 0; code < total; ++code) {
        std::array<int, 4> off{};
        int c = code;
        for (int d = 0; d < dim; ++d) {
            off[d] = c % 3 - 1;
            c /= 3;
        }
        int first_nonzero = 0;
        for (int d = 0; d < dim; ++d)
            if (off[d] != 0) {
                first_nonzero = off[d];
                break;
            }
        if (first_nonzero > 0) offsets.push_back(off);
    }

    std::vector<std::pair<uint32_t, uint32_t>> edges;
    for (const auto& [key, members] : cells) {
        for (size_t a = 0; a < members.size(); ++a)
            for (size_t b = a + 1; b < members.size(); ++b)
                edges.emplace_back(members[a], members[b]);
        for (const auto& off : offsets) {
            CellKey other = key;
            for (int d = 0; d < dim; ++d) other.c[d] += off[d];
            const auto it = cells.find(other);
            if (it == cells.end()) continue;
            for (uint32_t a : members)
                for (uint32_t b : it->second) edges.emplace_back(a, b);
        }
    }
    return edges;
}

std::vector<std::pair<uint32_t, uint32_t>> build_knn_edges(const DataMatrix& pts, int k) {
    const size_t n = pts.rows();
    const int dim = static_cast<int>(pts.spatial_cols());
    const size_t kk = std::min<size_t>(static_cast<size_t>(k), n - 1);

    std::vector<std::pair<uint32_t, uint32_t>> edges;
    edges.reserve(n * kk);
    std::vector<std::pair<double, uint32_t>> dist(n);
    for (size_t i = 0; i < n; ++i) {
        const auto ri = pts.row(i);
        for (size_t j = 0; j < n; ++j) {
            const auto rj = pts.row(j);
            double d = 0.0;
            for (int c = 0; c < dim; ++c) d += (ri[c] - rj[c]) * (ri[c] - rj[c]);
            dist[j] = {j == i ? std::numeric_limits<double>::max() : d,
                       static_cast<uint32_t>(j)};
        }
        std::nth_element(dist.begin(), dist.begin() + kk, dist.end());
        for (size_t t = 0; t < kk; ++t)
            edges.emplace_back(static_cast<uint32_t>(i), dist[t].second);
    }
    return edges;
}

}  // namespace

NeighborhoodGraph::NeighborhoodGraph(size_t n,
                                     std::vector<std::pair<uint32_t, uint32_t>> edges)
    : n_(n), edges_(std::move(edges)) {
    normalize_edges(edges_);
    std::vector<size_t> degree(n_, 0);
    for (const auto& [a, b] : edges_) {
        ++degree[a];
        ++degree[b];
    }
    offsets_.assign(n_ + 1, 0);
    for (size_t i = 0; i < n_; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
    adjacency_.resize(2 * edges_.size());
    std::vector<size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [a, b] : edges_) {
        adjacency_[cursor[a]++] = b;
        adjacency_[cursor[b]++] = a;
    }
    for (size_t i = 0; i < n_; ++i)
        std::sort(adjacency_.begin() + offsets_[i], adjacency_.begin() + offsets_[i + 1]);
}

double default_grid_cell_size(const DataMatrix& points) {
    const int dim = static_cast<int>(points.spatial_cols());
    double lo[4], hi[4];
    for (int d = 0; d < dim; ++d) {
        lo[d] = std::numeric_limits<double>::max();
        hi[d] = std::numeric_limits<double>::lowest();
    }
    for (size_t i = 0; i < points.rows(); ++i) {
        const auto row = points.row(i);
        for (int d = 0; d < dim; ++d) {
            lo[d] = std::min(lo[d], row[d]);
            hi[d] = std::max(hi[d], row[d]);
        }
    }
    double diag = 0.0;
    for (int d = 0; d < dim; ++d) diag += (hi[d] - lo[d]) * (hi[d] - lo[d]);
    diag = std::sqrt(diag);
    return diag > 0.0 ? diag / 20.0 : 1.0;
}

NeighborhoodGraph build_graph(const DataMatrix& points, const GraphConfig& config) {
    if (points.rows() == 0) throw std::invalid_argument("build_graph: empty input");
    if (points.spatial_cols() < 1 || points.spatial_cols() > 4)
        throw std::invalid_argument("build_graph: unsupported dimension");

    if (config.mode == GraphConfig::Mode::Grid) {
        double cell = config.cell_size;
        if (cell <= 0.0) cell = default_grid_cell_size(points);
        return NeighborhoodGraph(points.rows(), build_grid_edges(points, cell));
    }
    if (config.k < 1) throw std::invalid_argument("build_graph: k must be >= 1");
    return NeighborhoodGraph(points.rows(), build_knn_edges(points, config.k));
}

std::optional<std::vector<size_t>> napsac_sample(const NeighborhoodGraph& graph, size_t m,
                                                 RandomEngine& rng) {
    const size_t n = graph.point_count();
    if (m < 1 || n == 0) return std::nullopt;
    const size_t seed = rng.next_below(n);
    std::vector<size_t> sample{seed};
    if (m == 1) return sample;

    const auto one_hop = graph.neighbors(seed);
    std::vector<uint32_t> pool(one_hop.begin(), one_hop.end());
    if (pool.size() < m - 1) {
        std::unordered_set<uint32_t> seen(pool.begin(), pool.end());
        seen.insert(static_cast<uint32_t>(seed));
        for (uint32_t v : one_hop)
            for (uint32_t w : graph.neighbors(v))
                if (seen.insert(w).second) pool.push_back(w);
        std::sort(pool.begin(), pool.end());  // hash order must not leak into draws
    }
    if (pool.size() < m - 1) return std::nullopt;

    for (size_t t = 0; t + 1 < m; ++t) {
        const size_t j = t + rng.next_below(pool.size() - t);
        std::swap(pool[t], pool[j]);
        sample.push_back(pool[t]);
    }
    return sample;
}

std::vector<size_t> uniform_sample(size_t n, size_t m, RandomEngine& rng) {
    if (m > n) throw std::invalid_argument("uniform_sample: m > n");
    std::vector<size_t> sample;
    sample.reserve(m);
    if (m * 2 >= n) {
        std::vector<size_t> idx(n);
        for (size_t i = 0; i < n; ++i) idx[i] = i;
        for (size_t t = 0; t < m; ++t) {
            const size_t j = t + rng.next_below(n - t);
            std::swap(idx[t], idx[j]);
            sample.push_back(idx[t]);
        }
        return sample;
    }
    // Sparse case: rejection keeps each m-subset equally likely.
    while (sample.size() < m) {
        const size_t c = rng.next_below(n);
        if (std::find(sample.begin(), sample.end(), c) == sample.end()) sample.push_back(c);
    }
    return sample;
}

}  // namespace progx
