#include "progx/scoring.hpp"

#include <algorithm>
#include <cmath>

namespace progx {

void CompoundModel::add(const Instance& instance, double epsilon) {
    instances_.push_back(instance);
    epsilons_.push_back(epsilon);
    const size_t n = data_->rows();
    for (size_t p = 0; p < n; ++p) {
        const double r = residual(instance, *data_, p);
        min_dist_[p] = std::min(min_dist_[p], r);
        if (r < epsilon && !covered_[p]) {
            covered_[p] = 1;
            ++covered_count_;
        }
    }
}

void CompoundModel::remove(size_t index) {
    instances_.erase(instances_.begin() + static_cast<ptrdiff_t>(index));
    epsilons_.erase(epsilons_.begin() + static_cast<ptrdiff_t>(index));
    recompute();
}

void CompoundModel::rebuild(const std::vector<Instance>& instances,
                            const std::vector<double>& epsilons) {
    instances_ = instances;
    epsilons_ = epsilons;
    recompute();
}

void CompoundModel::recompute() {
    const size_t n = data_->rows();
    std::fill(min_dist_.begin(), min_dist_.end(), std::numeric_limits<double>::infinity());
    std::fill(covered_.begin(), covered_.end(), 0);
    covered_count_ = 0;
    for (size_t i = 0; i < instances_.size(); ++i) {
        for (size_t p = 0; p < n; ++p) {
            const double r = residual(instances_[i], *data_, p);
            min_dist_[p] = std::min(min_dist_[p], r);
            if (r < epsilons_[i] && !covered_[p]) {
                covered_[p] = 1;
                ++covered_count_;
            }
        }
    }
}

size_t quality_ransac(const Instance& instance, const DataMatrix& data, double epsilon) {
    size_t count = 0;
    for (size_t p = 0; p < data.rows(); ++p)
        if (residual(instance, data, p) < epsilon) ++count;
    return count;
}

size_t quality_ransac_conditioned(const Instance& instance, const CompoundModel& compound,
                                  const DataMatrix& data, double epsilon) {
    size_t count = 0;
    for (size_t p = 0; p < data.rows(); ++p)
        if (residual(instance, data, p) < epsilon && compound.distance(p) >= epsilon) ++count;
    return count;
}

double quality_msac(const Instance& instance, const DataMatrix& data, double epsilon) {
    const double gamma_sq = msac_gamma(epsilon) * msac_gamma(epsilon);
    double penalty = 0.0;
    for (size_t p = 0; p < data.rows(); ++p) {
        const double r = residual(instance, data, p);
        penalty += std::min(1.0, r * r / gamma_sq);
    }
    return static_cast<double>(data.rows()) - penalty;
}

double quality_msac_conditioned(const Instance& instance, const CompoundModel& compound,
                                const DataMatrix& data, double epsilon) {
    const double gamma_sq = msac_gamma(epsilon) * msac_gamma(epsilon);
    double penalty = 0.0;
    for (size_t p = 0; p < data.rows(); ++p) {
        const double r = residual(instance, data, p);
        const double rc = compound.distance(p);
        // 1 - rc^2/gamma^2 is -inf for an empty compound, so max() falls
        // back to the plain MSAC term.
        const double shared = 1.0 - rc * rc / gamma_sq;
        penalty += std::min(1.0, std::max(r * r / gamma_sq, shared));
    }
    return static_cast<double>(data.rows()) - penalty;
}

}  // namespace progx
