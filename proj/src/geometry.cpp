#include "progx/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace progx {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Collinearity: triangle area below 1e-9 of the squared sample-bbox
// diagonal. The diagonal is used as the area scale so that axis-aligned
// collinear samples (zero-area bbox) are still flagged.
constexpr double kCollinearRel = 1e-9;
constexpr double kParallelNormalTol = 1e-6;

const ModelClass kClasses[] = {
    {ModelClassId::Line2D, 2, 2, 2, "line"},
    {ModelClassId::Circle2D, 3, 3, 2, "circle"},
    {ModelClassId::Homography, 4, 9, 4, "homography"},
    {ModelClassId::Plane3D, 3, 4, 3, "plane"},
    {ModelClassId::Cylinder3D, 2, 7, 6, "cylinder"},
    {ModelClassId::Outlier, 0, 0, 0, "outlier"},
};

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

double sq(double x) { return x * x; }

// Squared bbox diagonal of the selected rows over columns [offset, offset+width).
double bbox_diag_sq(const DataMatrix& data, std::span<const size_t> rows, int width,
                    int offset = 0) {
    double lo[4], hi[4];
    for (int c = 0; c < width; ++c) {
        lo[c] = std::numeric_limits<double>::max();
        hi[c] = std::numeric_limits<double>::lowest();
    }
    for (size_t r : rows) {
        const auto row = data.row(r);
        for (int c = 0; c < width; ++c) {
            lo[c] = std::min(lo[c], row[offset + c]);
            hi[c] = std::max(hi[c], row[offset + c]);
        }
    }
    double d = 0.0;
    for (int c = 0; c < width; ++c) d += sq(hi[c] - lo[c]);
    return d;
}

bool collinear2(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                double diag_sq) {
    const Eigen::Vector2d u = b - a, v = c - a;
    const double twice_area = std::abs(u.x() * v.y() - u.y() * v.x());
    return twice_area <= kCollinearRel * std::max(diag_sq, 1e-300);
}

Eigen::Vector2d row_xy(const DataMatrix& d, size_t r, int offset = 0) {
    const auto row = d.row(r);
    return {row[offset], row[offset + 1]};
}

Eigen::Vector3d row_xyz(const DataMatrix& d, size_t r, int offset = 0) {
    const auto row = d.row(r);
    return {row[offset], row[offset + 1], row[offset + 2]};
}

void canonicalize_line(double& alpha, double& c) {
    alpha = std::fmod(alpha, kTwoPi);
    if (alpha < 0.0) alpha += kTwoPi;
    if (c > 0.0 || (c == 0.0 && alpha >= kPi)) {
        alpha = std::fmod(alpha + kPi, kTwoPi);
        c = -c;
    }
    if (c == 0.0) c = 0.0;  // normalize -0
}

// Flips sign so the first entry above tolerance is positive; false if all ~0.
bool fix_sign(std::span<double> v, double tol = 1e-14) {
    for (double x : v) {
        if (std::abs(x) > tol) {
            if (x < 0.0)
                for (double& y : v) y = -y;
            return true;
        }
    }
    return false;
}

double det3(const Eigen::Matrix3d& m) { return m.determinant(); }

Eigen::Matrix3d adjugate3(const Eigen::Matrix3d& m) {
    Eigen::Matrix3d a;
    a(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    a(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
    a(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
    a(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
    a(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
    a(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
    a(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
    a(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
    a(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return a;
}

Eigen::Matrix3d params_to_h(std::span<const double> p) {
    Eigen::Matrix3d h;
    h << p[0], p[1], p[2], p[3], p[4], p[5], p[6], p[7], p[8];
    return h;
}

// Hartley normalization: centroid to origin, mean distance sqrt(2).
Eigen::Matrix3d hartley_transform(const std::vector<Eigen::Vector2d>& pts) {
    Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
    for (const auto& p : pts) centroid += p;
    centroid /= static_cast<double>(pts.size());
    double mean_dist = 0.0;
    for (const auto& p : pts) mean_dist += (p - centroid).norm();
    mean_dist /= static_cast<double>(pts.size());
    const double scale = mean_dist > 1e-300 ? std::numbers::sqrt2 / mean_dist : 1.0;
    Eigen::Matrix3d t = Eigen::Matrix3d::Identity();
    t(0, 0) = scale;
    t(1, 1) = scale;
    t(0, 2) = -scale * centroid.x();
    t(1, 2) = -scale * centroid.y();
    return t;
}

std::optional<Instance> dlt_homography(const std::vector<Eigen::Vector2d>& src,
                                       const std::vector<Eigen::Vector2d>& dst) {
    const size_t n = src.size();
    const Eigen::Matrix3d t1 = hartley_transform(src);
    const Eigen::Matrix3d t2 = hartley_transform(dst);

    Eigen::MatrixXd a(2 * n, 9);
    for (size_t i = 0; i < n; ++i) {
        const Eigen::Vector3d p = t1 * src[i].homogeneous();
        const Eigen::Vector3d q = t2 * dst[i].homogeneous();
        const double x = p.x(), y = p.y(), u = q.x(), v = q.y();
        a.row(2 * i) << x, y, 1, 0, 0, 0, -u * x, -u * y, -u;
        a.row(2 * i + 1) << 0, 0, 0, x, y, 1, -v * x, -v * y, -v;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    // A rank deficit beyond the one-dimensional nullspace means the
    // homography is not determined by this support.
    if (n > 4 && sv(7) <= 1e-10 * std::max(sv(0), 1e-300)) return std::nullopt;
    const Eigen::VectorXd h = svd.matrixV().col(8);

    Eigen::Matrix3d hn;
    hn << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), h(8);
    const Eigen::Matrix3d big_h = t2.inverse() * hn * t1;

    double raw[9];
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) raw[3 * r + c] = big_h(r, c);
    return Instance::make(ModelClassId::Homography, raw);
}

struct Frame {
    Eigen::Vector3d u, v;  // orthonormal basis of the plane orthogonal to axis
};

Frame plane_basis(const Eigen::Vector3d& axis) {
    Eigen::Vector3d ref = std::abs(axis.x()) < 0.9 ? Eigen::Vector3d::UnitX()
                                                   : Eigen::Vector3d::UnitY();
    Frame f;
    f.u = (ref - ref.dot(axis) * axis).normalized();
    f.v = axis.cross(f.u);
    return f;
}

struct KasaFit {
    Eigen::Vector2d center;
    double radius;
};

// Algebraic (Kasa) circle fit on centered coordinates.
std::optional<KasaFit> kasa_circle(const std::vector<Eigen::Vector2d>& pts) {
    const size_t n = pts.size();
    if (n < 3) return std::nullopt;
    Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
    for (const auto& p : pts) centroid += p;
    centroid /= static_cast<double>(n);

    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    Eigen::Vector3d b = Eigen::Vector3d::Zero();
    for (const auto& p : pts) {
        const double x = p.x() - centroid.x(), y = p.y() - centroid.y();
        const double z = x * x + y * y;
        m(0, 0) += x * x;
        m(0, 1) += x * y;
        m(0, 2) += x;
        m(1, 1) += y * y;
        m(1, 2) += y;
        m(2, 2) += 1.0;
        b(0) -= x * z;
        b(1) -= y * z;
        b(2) -= z;
    }
    m(1, 0) = m(0, 1);
    m(2, 0) = m(0, 2);
    m(2, 1) = m(1, 2);

    Eigen::FullPivLU<Eigen::Matrix3d> lu(m);
    lu.setThreshold(1e-12);
    if (lu.rank() < 3) return std::nullopt;
    const Eigen::Vector3d def = lu.solve(b);

    const Eigen::Vector2d center_local(-def(0) / 2.0, -def(1) / 2.0);
    const double r_sq = center_local.squaredNorm() - def(2);
    if (!(r_sq > 0.0)) return std::nullopt;
    return KasaFit{center_local + centroid, std::sqrt(r_sq)};
}

std::optional<Instance> fit_line_minimal(const DataMatrix& data, std::span<const size_t> s) {
    const Eigen::Vector2d p1 = row_xy(data, s[0]), p2 = row_xy(data, s[1]);
    const Eigen::Vector2d d = p2 - p1;
    const double scale = std::max(1.0, p1.squaredNorm() + p2.squaredNorm());
    if (d.squaredNorm() <= 1e-24 * scale) return std::nullopt;
    const Eigen::Vector2d n = Eigen::Vector2d(-d.y(), d.x()).normalized();
    const double alpha = std::atan2(n.y(), n.x());
    const double c = -n.dot(p1);
    const double raw[2] = {alpha, c};
    return Instance::make(ModelClassId::Line2D, raw);
}

std::optional<Instance> fit_circle_minimal(const DataMatrix& data, std::span<const size_t> s) {
    const Eigen::Vector2d p1 = row_xy(data, s[0]), p2 = row_xy(data, s[1]),
                          p3 = row_xy(data, s[2]);
    const double diag_sq = bbox_diag_sq(data, s, 2);
    if (collinear2(p1, p2, p3, diag_sq)) return std::nullopt;

    Eigen::Matrix2d m;
    Eigen::Vector2d b;
    m.row(0) = 2.0 * (p2 - p1).transpose();
    m.row(1) = 2.0 * (p3 - p1).transpose();
    b(0) = p2.squaredNorm() - p1.squaredNorm();
    b(1) = p3.squaredNorm() - p1.squaredNorm();
    const Eigen::Vector2d center = m.inverse() * b;
    const double r = (p1 - center).norm();
    const double raw[3] = {center.x(), center.y(), r};
    return Instance::make(ModelClassId::Circle2D, raw);
}

std::optional<Instance> fit_plane_minimal(const DataMatrix& data, std::span<const size_t> s) {
    const Eigen::Vector3d p1 = row_xyz(data, s[0]), p2 = row_xyz(data, s[1]),
                          p3 = row_xyz(data, s[2]);
    const double diag_sq = bbox_diag_sq(data, s, 3);
    const Eigen::Vector3d cr = (p2 - p1).cross(p3 - p1);
    if (cr.norm() <= kCollinearRel * std::max(diag_sq, 1e-300)) return std::nullopt;
    const Eigen::Vector3d n = cr.normalized();
    const double raw[4] = {n.x(), n.y(), n.z(), -n.dot(p1)};
    return Instance::make(ModelClassId::Plane3D, raw);
}

std::optional<Instance> fit_homography_minimal(const DataMatrix& data,
                                               std::span<const size_t> s) {
    std::vector<Eigen::Vector2d> src(4), dst(4);
    for (int i = 0; i < 4; ++i) {
        src[i] = row_xy(data, s[i], 0);
        dst[i] = row_xy(data, s[i], 2);
    }
    const double diag_src = bbox_diag_sq(data, s, 2, 0);
    const double diag_dst = bbox_diag_sq(data, s, 2, 2);
    static constexpr int kTriples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    for (const auto& t : kTriples) {
        if (collinear2(src[t[0]], src[t[1]], src[t[2]], diag_src)) return std::nullopt;
        if (collinear2(dst[t[0]], dst[t[1]], dst[t[2]], diag_dst)) return std::nullopt;
    }
    return dlt_homography(src, dst);
}

std::optional<Instance> fit_cylinder_minimal(const DataMatrix& data,
                                             std::span<const size_t> s) {
    if (data.cols() < 6) return std::nullopt;
    const Eigen::Vector3d p1 = row_xyz(data, s[0]), p2 = row_xyz(data, s[1]);
    Eigen::Vector3d n1 = row_xyz(data, s[0], 3), n2 = row_xyz(data, s[1], 3);
    if (n1.norm() <= 1e-300 || n2.norm() <= 1e-300) return std::nullopt;
    n1.normalize();
    n2.normalize();

    const Eigen::Vector3d cr = n1.cross(n2);
    if (cr.norm() < kParallelNormalTol) return std::nullopt;
    const Eigen::Vector3d axis = cr.normalized();
    const Frame f = plane_basis(axis);

    const Eigen::Vector2d q1(p1.dot(f.u), p1.dot(f.v)), q2(p2.dot(f.u), p2.dot(f.v));
    Eigen::Vector2d m1(n1.dot(f.u), n1.dot(f.v)), m2(n2.dot(f.u), n2.dot(f.v));
    m1.normalize();
    m2.normalize();

    const Eigen::Vector2d dm = m1 - m2, dq = q1 - q2;
    const double dm_sq = dm.squaredNorm();
    if (dm_sq <= 1e-24) return std::nullopt;
    const double r_signed = dq.dot(dm) / dm_sq;
    if (std::abs(r_signed) <= 1e-12) return std::nullopt;
    const Eigen::Vector2d center2 = 0.5 * ((q1 - r_signed * m1) + (q2 - r_signed * m2));
    const Eigen::Vector3d c3 = center2.x() * f.u + center2.y() * f.v;

    const double raw[7] = {c3.x(),  c3.y(),  c3.z(),          axis.x(),
                           axis.y(), axis.z(), std::abs(r_signed)};
    return Instance::make(ModelClassId::Cylinder3D, raw);
}

std::optional<Instance> refit_line(const DataMatrix& data, std::span<const size_t> pts) {
    Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
    for (size_t r : pts) centroid += row_xy(data, r);
    centroid /= static_cast<double>(pts.size());

    Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
    for (size_t r : pts) {
        const Eigen::Vector2d d = row_xy(data, r) - centroid;
        cov += d * d.transpose();
    }
    if (cov.trace() <= 1e-300) return std::nullopt;  // all points coincident
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(cov);
    const Eigen::Vector2d n = eig.eigenvectors().col(0);  // smallest eigenvalue
    const double raw[2] = {std::atan2(n.y(), n.x()), -n.dot(centroid)};
    return Instance::make(ModelClassId::Line2D, raw);
}

std::optional<Instance> refit_plane(const DataMatrix& data, std::span<const size_t> pts) {
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (size_t r : pts) centroid += row_xyz(data, r);
    centroid /= static_cast<double>(pts.size());

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (size_t r : pts) {
        const Eigen::Vector3d d = row_xyz(data, r) - centroid;
        cov += d * d.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    const auto& ev = eig.eigenvalues();
    if (ev(2) <= 1e-300 || ev(1) <= 1e-12 * ev(2)) return std::nullopt;  // collinear
    const Eigen::Vector3d n = eig.eigenvectors().col(0);
    const double raw[4] = {n.x(), n.y(), n.z(), -n.dot(centroid)};
    return Instance::make(ModelClassId::Plane3D, raw);
}

std::optional<Instance> refit_circle(const DataMatrix& data, std::span<const size_t> pts) {
    std::vector<Eigen::Vector2d> p;
    p.reserve(pts.size());
    for (size_t r : pts) p.push_back(row_xy(data, r));
    const auto fit = kasa_circle(p);
    if (!fit) return std::nullopt;
    const double raw[3] = {fit->center.x(), fit->center.y(), fit->radius};
    return Instance::make(ModelClassId::Circle2D, raw);
}

std::optional<Instance> refit_homography(const DataMatrix& data, std::span<const size_t> pts) {
    std::vector<Eigen::Vector2d> src, dst;
    src.reserve(pts.size());
    dst.reserve(pts.size());
    for (size_t r : pts) {
        src.push_back(row_xy(data, r, 0));
        dst.push_back(row_xy(data, r, 2));
    }
    return dlt_homography(src, dst);
}

std::optional<Instance> refit_cylinder(const DataMatrix& data, std::span<const size_t> pts) {
    if (data.cols() < 6) return std::nullopt;
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (size_t r : pts) {
        Eigen::Vector3d n = row_xyz(data, r, 3);
        const double len = n.norm();
        if (len <= 1e-300) continue;
        n /= len;
        cov += n * n.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    const auto& ev = eig.eigenvalues();
    if (ev(2) <= 1e-300 || ev(1) <= 1e-12 * ev(2)) return std::nullopt;  // parallel normals
    const Eigen::Vector3d axis = eig.eigenvectors().col(0);
    const Frame f = plane_basis(axis);

    std::vector<Eigen::Vector2d> proj;
    proj.reserve(pts.size());
    for (size_t r : pts) {
        const Eigen::Vector3d p = row_xyz(data, r);
        proj.emplace_back(p.dot(f.u), p.dot(f.v));
    }
    const auto fit = kasa_circle(proj);
    if (!fit) return std::nullopt;
    const Eigen::Vector3d c3 = fit->center.x() * f.u + fit->center.y() * f.v;
    const double raw[7] = {c3.x(),  c3.y(),  c3.z(),      axis.x(),
                           axis.y(), axis.z(), fit->radius};
    return Instance::make(ModelClassId::Cylinder3D, raw);
}

}  // namespace

const ModelClass& model_class(ModelClassId id) { return kClasses[static_cast<int>(id)]; }

std::optional<ModelClassId> model_class_by_name(std::string_view name) {
    for (const auto& mc : kClasses)
        if (name == mc.name) return mc.id;
    if (name == "line2d") return ModelClassId::Line2D;
    if (name == "circle2d") return ModelClassId::Circle2D;
    if (name == "plane3d") return ModelClassId::Plane3D;
    if (name == "cylinder3d") return ModelClassId::Cylinder3D;
    return std::nullopt;
}

DataMatrix pack_points(const std::vector<Point>& points) {
    if (points.empty()) return {};
    const int dim = points[0].dim;
    const bool normals = points[0].normal.has_value();
    const size_t cols = (dim == 2) ? 2 : (normals ? 6 : 3);
    DataMatrix m(points.size(), cols, static_cast<size_t>(dim));
    for (size_t i = 0; i < points.size(); ++i) {
        const Point& p = points[i];
        if (p.dim != dim || p.normal.has_value() != normals)
            throw std::invalid_argument("pack_points: inconsistent point layout");
        auto row = m.row(i);
        for (int c = 0; c < dim; ++c) row[c] = p.coords(c);
        if (dim == 3 && normals)
            for (int c = 0; c < 3; ++c) row[3 + c] = (*p.normal)(c);
    }
    return m;
}

DataMatrix pack_correspondences(const std::vector<Correspondence>& correspondences) {
    DataMatrix m(correspondences.size(), 4, 4);
    for (size_t i = 0; i < correspondences.size(); ++i) {
        auto row = m.row(i);
        row[0] = correspondences[i].source.x();
        row[1] = correspondences[i].source.y();
        row[2] = correspondences[i].target.x();
        row[3] = correspondences[i].target.y();
    }
    return m;
}

std::optional<Instance> Instance::make(ModelClassId id, std::span<const double> raw) {
    const ModelClass& mc = model_class(id);
    if (raw.size() != static_cast<size_t>(mc.parameter_count)) return std::nullopt;
    if (!all_finite(raw)) return std::nullopt;

    Instance inst;
    inst.class_id = id;
    inst.params.assign(raw.begin(), raw.end());

    switch (id) {
        case ModelClassId::Line2D: {
            canonicalize_line(inst.params[0], inst.params[1]);
            inst.derived = {std::cos(inst.params[0]), std::sin(inst.params[0])};
            break;
        }
        case ModelClassId::Circle2D: {
            if (!(inst.params[2] > 0.0)) return std::nullopt;
            break;
        }
        case ModelClassId::Homography: {
            Eigen::Map<Eigen::Matrix<double, 9, 1>> v(inst.params.data());
            const double norm = v.norm();
            if (norm <= 1e-300) return std::nullopt;
            v /= norm;
            if (!fix_sign(inst.params)) return std::nullopt;
            const Eigen::Matrix3d h = params_to_h(inst.params);
            if (std::abs(det3(h)) < 1e-15) return std::nullopt;
            const Eigen::Matrix3d hinv = adjugate3(h);
            inst.derived.resize(9);
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) inst.derived[3 * r + c] = hinv(r, c);
            break;
        }
        case ModelClassId::Plane3D: {
            Eigen::Map<Eigen::Vector3d> n(inst.params.data());
            const double norm = n.norm();
            if (norm <= 1e-300) return std::nullopt;
            n /= norm;
            inst.params[3] /= norm;
            fix_sign(std::span<double>(inst.params.data(), 4));
            break;
        }
        case ModelClassId::Cylinder3D: {
            Eigen::Map<Eigen::Vector3d> p(inst.params.data());
            Eigen::Map<Eigen::Vector3d> a(inst.params.data() + 3);
            const double norm = a.norm();
            if (norm <= 1e-300 || !(inst.params[6] > 0.0)) return std::nullopt;
            a /= norm;
            fix_sign(std::span<double>(inst.params.data() + 3, 3));
            p -= p.dot(a) * a;  // point on axis closest to the origin
            break;
        }
        case ModelClassId::Outlier: {
            inst.derived = {1.0};
            break;
        }
    }
    return inst;
}

Instance Instance::make_outlier(double constant_distance) {
    Instance inst;
    inst.class_id = ModelClassId::Outlier;
    inst.derived = {constant_distance};
    return inst;
}

std::optional<Instance> fit_minimal(ModelClassId id, const DataMatrix& data,
                                    std::span<const size_t> sample) {
    const ModelClass& mc = model_class(id);
    if (sample.size() != static_cast<size_t>(mc.minimal_sample_size)) return std::nullopt;
    switch (id) {
        case ModelClassId::Line2D: return fit_line_minimal(data, sample);
        case ModelClassId::Circle2D: return fit_circle_minimal(data, sample);
        case ModelClassId::Homography: return fit_homography_minimal(data, sample);
        case ModelClassId::Plane3D: return fit_plane_minimal(data, sample);
        case ModelClassId::Cylinder3D: return fit_cylinder_minimal(data, sample);
        case ModelClassId::Outlier: return Instance::make_outlier(1.0);
    }
    return std::nullopt;
}

std::optional<Instance> refit(ModelClassId id, const DataMatrix& data,
                              std::span<const size_t> support) {
    const ModelClass& mc = model_class(id);
    if (support.size() < static_cast<size_t>(mc.minimal_sample_size)) return std::nullopt;
    switch (id) {
        case ModelClassId::Line2D: return refit_line(data, support);
        case ModelClassId::Circle2D: return refit_circle(data, support);
        case ModelClassId::Homography: return refit_homography(data, support);
        case ModelClassId::Plane3D: return refit_plane(data, support);
        case ModelClassId::Cylinder3D: return refit_cylinder(data, support);
        case ModelClassId::Outlier: return Instance::make_outlier(1.0);
    }
    return std::nullopt;
}

double residual(const Instance& inst, std::span<const double> d) {
    switch (inst.class_id) {
        case ModelClassId::Line2D:
            return std::abs(inst.derived[0] * d[0] + inst.derived[1] * d[1] + inst.params[1]);
        case ModelClassId::Circle2D: {
            const double dx = d[0] - inst.params[0], dy = d[1] - inst.params[1];
            return std::abs(std::sqrt(dx * dx + dy * dy) - inst.params[2]);
        }
        case ModelClassId::Plane3D:
            return std::abs(inst.params[0] * d[0] + inst.params[1] * d[1] +
                            inst.params[2] * d[2] + inst.params[3]);
        case ModelClassId::Cylinder3D: {
            const double vx = d[0] - inst.params[0], vy = d[1] - inst.params[1],
                         vz = d[2] - inst.params[2];
            const double ax = inst.params[3], ay = inst.params[4], az = inst.params[5];
            const double along = vx * ax + vy * ay + vz * az;
            const double px = vx - along * ax, py = vy - along * ay, pz = vz - along * az;
            return std::abs(std::sqrt(px * px + py * py + pz * pz) - inst.params[6]);
        }
        case ModelClassId::Homography: {
            const double* h = inst.params.data();
            const double* g = inst.derived.data();  // adjugate of H
            const double x = d[0], y = d[1], u = d[2], v = d[3];
            const double fw = h[6] * x + h[7] * y + h[8];
            const double bw = g[6] * u + g[7] * v + g[8];
            if (std::abs(fw) < 1e-15 || std::abs(bw) < 1e-15)
                return std::numeric_limits<double>::max();
            const double fx = (h[0] * x + h[1] * y + h[2]) / fw - u;
            const double fy = (h[3] * x + h[4] * y + h[5]) / fw - v;
            const double bx = (g[0] * u + g[1] * v + g[2]) / bw - x;
            const double by = (g[3] * u + g[4] * v + g[5]) / bw - y;
            return std::sqrt(0.5 * (fx * fx + fy * fy + bx * bx + by * by));
        }
        case ModelClassId::Outlier: return inst.derived[0];
    }
    return 0.0;
}

std::optional<Instance> fit_minimal(ModelClassId id, const std::vector<Point>& sample) {
    const DataMatrix m = pack_points(sample);
    std::vector<size_t> idx(sample.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return fit_minimal(id, m, idx);
}

std::optional<Instance> fit_minimal(ModelClassId id,
                                    const std::vector<Correspondence>& sample) {
    const DataMatrix m = pack_correspondences(sample);
    std::vector<size_t> idx(sample.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return fit_minimal(id, m, idx);
}

double residual(const Instance& inst, const Point& p) {
    double d[6] = {p.coords.x(), p.coords.y(), p.coords.z(), 0, 0, 0};
    if (p.normal) {
        d[3] = p.normal->x();
        d[4] = p.normal->y();
        d[5] = p.normal->z();
    }
    return residual(inst, std::span<const double>(d, 6));
}

double residual(const Instance& inst, const Correspondence& c) {
    const double d[4] = {c.source.x(), c.source.y(), c.target.x(), c.target.y()};
    return residual(inst, std::span<const double>(d, 4));
}

}  // namespace progx
