#include "progx/metrics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace progx {

std::vector<int> hungarian_min_cost(const std::vector<double>& cost, size_t n) {
    if (cost.size() != n * n) throw std::invalid_argument("hungarian: bad matrix size");
    constexpr double kInf = std::numeric_limits<double>::max();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<size_t> match(n + 1, 0), way(n + 1, 0);

    for (size_t i = 1; i <= n; ++i) {
        match[0] = i;
        size_t j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const size_t i0 = match[j0];
            double delta = kInf;
            size_t j1 = 0;
            for (size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> assignment(n, -1);
    for (size_t j = 1; j <= n; ++j)
        if (match[j] != 0) assignment[match[j] - 1] = static_cast<int>(j - 1);
    return assignment;
}

std::vector<int> external_labels(std::span<const uint32_t> labels, size_t instance_count) {
    std::vector<int> out(labels.size());
    for (size_t p = 0; p < labels.size(); ++p)
        out[p] = labels[p] >= instance_count ? 0 : static_cast<int>(labels[p]) + 1;
    return out;
}

double misclassification_error(std::span<const int> predicted, std::span<const int> gt) {
    if (predicted.size() != gt.size())
        throw std::invalid_argument("misclassification_error: size mismatch");
    const size_t n = predicted.size();
    if (n == 0) return 0.0;

    std::map<int, size_t> pred_ids, gt_ids;
    for (int l : predicted) pred_ids.emplace(l, pred_ids.size());
    for (int l : gt) gt_ids.emplace(l, gt_ids.size());
    // re-number in sorted key order for determinism
    size_t idx = 0;
    for (auto& [key, value] : pred_ids) value = idx++;
    idx = 0;
    for (auto& [key, value] : gt_ids) value = idx++;

    const size_t k = std::max(pred_ids.size(), gt_ids.size());
    std::vector<double> agreement(k * k, 0.0);
    for (size_t p = 0; p < n; ++p)
        agreement[pred_ids[predicted[p]] * k + gt_ids[gt[p]]] += 1.0;

    std::vector<double> cost(k * k);
    for (size_t i = 0; i < k * k; ++i) cost[i] = -agreement[i];
    const auto assignment = hungarian_min_cost(cost, k);

    double agreed = 0.0;
    for (size_t i = 0; i < k; ++i)
        if (assignment[i] >= 0) agreed += agreement[i * k + assignment[i]];
    return 1.0 - agreed / static_cast<double>(n);
}

namespace {

// Greedy claim of ground-truth clusters by instances holding >= 50% of
// their support in one cluster; returns the number of claims.
size_t claim_clusters(std::span<const uint32_t> labels, size_t instance_count,
                      std::span<const int> gt) {
    std::set<int> claimed;
    size_t claims = 0;
    for (size_t i = 0; i < instance_count; ++i) {
        std::map<int, size_t> counts;
        size_t support = 0;
        for (size_t p = 0; p < labels.size(); ++p) {
            if (labels[p] == i) {
                ++counts[gt[p]];
                ++support;
            }
        }
        if (support == 0) continue;
        // qualifying clusters in decreasing overlap, non-outlier only
        std::vector<std::pair<size_t, int>> qualifying;
        for (const auto& [id, c] : counts)
            if (id > 0 && 2 * c >= support) qualifying.emplace_back(c, id);
        std::sort(qualifying.begin(), qualifying.end(),
                  [](const auto& a, const auto& b) {
                      return a.first != b.first ? a.first > b.first : a.second < b.second;
                  });
        for (const auto& [c, id] : qualifying) {
            if (claimed.insert(id).second) {
                ++claims;
                break;
            }
        }
    }
    return claims;
}

}  // namespace

double audit_snapshot(std::span<const uint32_t> labels, size_t instance_count,
                      std::span<const int> gt) {
    if (instance_count == 0) return 1.0;
    if (gt.size() != labels.size())
        throw std::invalid_argument("audit_snapshot: ground truth size mismatch");
    return static_cast<double>(claim_clusters(labels, instance_count, gt)) /
           static_cast<double>(instance_count);
}

EvalReport evaluate(const FittingResult& result, std::span<const int> gt) {
    if (gt.size() != result.labels.size())
        throw std::invalid_argument("evaluate: ground truth size mismatch");
    EvalReport report;
    const auto predicted = external_labels(result.labels, result.instances.size());
    report.misclassification_error = misclassification_error(predicted, gt);

    std::set<int> gt_clusters;
    for (int g : gt)
        if (g > 0) gt_clusters.insert(g);
    const size_t claims = claim_clusters(result.labels, result.instances.size(), gt);
    report.false_negatives = static_cast<int>(gt_clusters.size() - claims);
    report.false_positives = static_cast<int>(result.instances.size() - claims);
    report.instance_delta =
        static_cast<int>(result.instances.size()) - static_cast<int>(gt_clusters.size());
    report.time_ms = result.wall_ms;
    return report;
}

}  // namespace progx
