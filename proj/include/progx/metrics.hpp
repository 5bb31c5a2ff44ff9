#pragma once

#include "progx/pipeline.hpp"

#include <span>
#include <vector>

namespace progx {

struct EvalReport {
    double misclassification_error = 0.0;
    int false_negatives = 0;
    int false_positives = 0;
    int instance_delta = 0;  // returned minus ground-truth instance count
    double time_ms = 0.0;
};

// Minimum-cost assignment on a square matrix (row-major), O(n^3).
// Returns the column assigned to each row.
std::vector<int> hungarian_min_cost(const std::vector<double>& cost, size_t n);

// Converts internal labels (outlier == instance_count) to the external
// convention: 0 for the outlier, instance index + 1 otherwise.
std::vector<int> external_labels(std::span<const uint32_t> labels, size_t instance_count);

// Fraction of points assigned to the wrong cluster under the optimal
// one-to-one matching of predicted and ground-truth clusters (the outlier
// cluster, id 0 on both sides, is matched like any other).
double misclassification_error(std::span<const int> predicted, std::span<const int> gt);

// Fraction of stored instances that cover distinct ground-truth clusters.
// An instance covers a cluster when at least half of its assigned points
// lie in it; every cluster is consumable once. Empty snapshots audit as 1.
double audit_snapshot(std::span<const uint32_t> labels, size_t instance_count,
                      std::span<const int> gt);

inline double audit_snapshot(const SnapshotRecord& snapshot, std::span<const int> gt) {
    return audit_snapshot(snapshot.labels, snapshot.instances.size(), gt);
}

EvalReport evaluate(const FittingResult& result, std::span<const int> gt);

}  // namespace progx
