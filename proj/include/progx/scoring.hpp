#pragma once

#include "progx/geometry.hpp"

#include <limits>
#include <vector>

namespace progx {

// The set of active instances with a cached per-point minimum-distance
// field. With no active instances every distance is +infinity.
class CompoundModel {
public:
    explicit CompoundModel(const DataMatrix& data)
        : data_(&data),
          min_dist_(data.rows(), std::numeric_limits<double>::infinity()),
          covered_(data.rows(), 0) {}

    // epsilon is the inlier threshold of the instance's class; it feeds the
    // per-point coverage flags used by the termination criterion.
    void add(const Instance& instance, double epsilon);
    void remove(size_t index);  // full recompute over the remaining instances
    void rebuild(const std::vector<Instance>& instances, const std::vector<double>& epsilons);

    size_t active_count() const { return instances_.size(); }
    const Instance& active(size_t i) const { return instances_[i]; }
    double active_epsilon(size_t i) const { return epsilons_[i]; }

    double distance(size_t point) const { return min_dist_[point]; }
    bool covered(size_t point) const { return covered_[point] != 0; }
    size_t covered_count() const { return covered_count_; }

    const DataMatrix& data() const { return *data_; }

private:
    void recompute();

    const DataMatrix* data_;
    std::vector<Instance> instances_;
    std::vector<double> epsilons_;
    std::vector<double> min_dist_;
    std::vector<uint8_t> covered_;
    size_t covered_count_ = 0;
};

inline double msac_gamma(double epsilon) { return 1.5 * epsilon; }

// Inlier count under strict < epsilon.
size_t quality_ransac(const Instance& instance, const DataMatrix& data, double epsilon);

// Counts points that are inliers of the instance and non-inliers of the
// compound model.
size_t quality_ransac_conditioned(const Instance& instance, const CompoundModel& compound,
                                  const DataMatrix& data, double epsilon);

// Truncated-quadratic MSAC quality with gamma = 1.5 epsilon.
double quality_msac(const Instance& instance, const DataMatrix& data, double epsilon);

// MSAC quality discounting points already explained by the compound model.
double quality_msac_conditioned(const Instance& instance, const CompoundModel& compound,
                                const DataMatrix& data, double epsilon);

}  // namespace progx
