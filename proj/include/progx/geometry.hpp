#pragma once

#include <Eigen/Core>

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace progx {

enum class ModelClassId : int {
    Line2D = 0,
    Circle2D = 1,
    Homography = 2,
    Plane3D = 3,
    Cylinder3D = 4,
    Outlier = 5,
};

// A model class bundles the minimal-solver arity, the parameter layout and
// the datum width expected by its solvers and distance function.
struct ModelClass {
    ModelClassId id;
    int minimal_sample_size;  // m
    int parameter_count;
    int datum_width;  // columns consumed from a data row
    const char* name;
};

const ModelClass& model_class(ModelClassId id);
std::optional<ModelClassId> model_class_by_name(std::string_view name);

// Row-major point/correspondence storage shared by the whole pipeline.
// Column layouts: Line2D/Circle2D x y; Plane3D x y z; Cylinder3D
// x y z nx ny nz; Homography x1 y1 x2 y2. spatial_cols is the prefix used
// for neighborhoods (4 for correspondences: the joint coordinate space).
class DataMatrix {
public:
    DataMatrix() = default;
    DataMatrix(size_t rows, size_t cols, size_t spatial_cols)
        : rows_(rows), cols_(cols), spatial_cols_(spatial_cols), values_(rows * cols, 0.0) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    size_t spatial_cols() const { return spatial_cols_; }

    std::span<const double> row(size_t i) const { return {values_.data() + i * cols_, cols_}; }
    std::span<double> row(size_t i) { return {values_.data() + i * cols_, cols_}; }
    double operator()(size_t i, size_t j) const { return values_[i * cols_ + j]; }
    double& operator()(size_t i, size_t j) { return values_[i * cols_ + j]; }

    const std::vector<double>& values() const { return values_; }

private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    size_t spatial_cols_ = 0;
    std::vector<double> values_;
};

struct Point {
    Eigen::Vector3d coords = Eigen::Vector3d::Zero();  // z ignored when dim == 2
    int dim = 2;
    std::optional<Eigen::Vector3d> normal;
};

struct Correspondence {
    Eigen::Vector2d source;
    Eigen::Vector2d target;
};

DataMatrix pack_points(const std::vector<Point>& points);
DataMatrix pack_correspondences(const std::vector<Correspondence>& correspondences);

// One model hypothesis. Parameters are kept in a canonical form so that
// equivalent parameterizations compare equal:
//   Line2D      [alpha, c], alpha in [0, 2pi), c < 0 or (c == 0, alpha < pi)
//   Circle2D    [cx, cy, r], r > 0
//   Homography  9 row-major entries, Frobenius norm 1, first nonzero positive
//   Plane3D     [nx, ny, nz, d], unit normal, first nonzero component positive
//   Cylinder3D  [px, py, pz, ax, ay, az, r]: point on axis closest to the
//               origin, unit direction with first nonzero positive, r > 0
//   Outlier     [] (the constant distance lives in the derived cache)
struct Instance {
    enum class State { Putative, Active };

    ModelClassId class_id = ModelClassId::Outlier;
    State state = State::Putative;
    std::vector<double> params;
    std::vector<double> derived;  // residual-path cache (line normal, H inverse, ...)

    const ModelClass& model() const { return model_class(class_id); }

    // Canonicalizes and validates a raw parameter vector; nullopt when the
    // parameters are nonfinite or violate a class invariant.
    static std::optional<Instance> make(ModelClassId id, std::span<const double> raw);
    static Instance make_outlier(double constant_distance);
};

// Minimal-sample solver; nullopt on a degenerate sample (coincident points,
// collinear triples, parallel cylinder normals).
std::optional<Instance> fit_minimal(ModelClassId id, const DataMatrix& data,
                                    std::span<const size_t> sample);

// Least-squares refit over an arbitrary support (TLS for lines/planes, Kasa
// for circles, normalized DLT for homographies, normal-covariance axis plus
// projected circle fit for cylinders).
std::optional<Instance> refit(ModelClassId id, const DataMatrix& data,
                              std::span<const size_t> support);

double residual(const Instance& instance, std::span<const double> datum);

inline double residual(const Instance& instance, const DataMatrix& data, size_t row) {
    return residual(instance, data.row(row));
}

// Convenience entry points used by tests and small callers.
std::optional<Instance> fit_minimal(ModelClassId id, const std::vector<Point>& sample);
std::optional<Instance> fit_minimal(ModelClassId id, const std::vector<Correspondence>& sample);
double residual(const Instance& instance, const Point& p);
double residual(const Instance& instance, const Correspondence& c);

}  // namespace progx
