#include "progx/geometry.hpp"
#include "progx/random.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

using namespace progx;

namespace {

Point pt2(double x, double y) {
    Point p;
    p.coords = {x, y, 0.0};
    p.dim = 2;
    return p;
}

Point pt3(double x, double y, double z) {
    Point p;
    p.coords = {x, y, z};
    p.dim = 3;
    return p;
}

Point oriented(double x, double y, double z, double nx, double ny, double nz) {
    Point p = pt3(x, y, z);
    p.normal = Eigen::Vector3d(nx, ny, nz).normalized();
    return p;
}

Correspondence corr(double x1, double y1, double x2, double y2) {
    return {{x1, y1}, {x2, y2}};
}

Eigen::Vector2d apply_h(const Eigen::Matrix3d& h, const Eigen::Vector2d& p) {
    const Eigen::Vector3d q = h * p.homogeneous();
    return q.hnormalized();
}

// Canonical form used by Instance: Frobenius norm 1, first nonzero positive.
Eigen::Matrix3d canonical_h(Eigen::Matrix3d h) {
    h /= h.norm();
    for (int i = 0; i < 9; ++i) {
        const double v = h(i / 3, i % 3);
        if (std::abs(v) > 1e-14) {
            if (v < 0.0) h = -h;
            break;
        }
    }
    return h;
}

}  // namespace

TEST_CASE("line minimal fit") {
    const auto inst = fit_minimal(ModelClassId::Line2D, {pt2(0, 0), pt2(1, 1)});
    REQUIRE(inst.has_value());
    CHECK(residual(*inst, pt2(0, 0)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(residual(*inst, pt2(1, 1)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(residual(*inst, pt2(1, 0)) == doctest::Approx(std::numbers::sqrt2 / 2));
    CHECK(inst->params[0] >= 0.0);
    CHECK(inst->params[0] < 2 * std::numbers::pi);
}

TEST_CASE("line degenerate: coincident points") {
    CHECK_FALSE(fit_minimal(ModelClassId::Line2D, {pt2(2, 3), pt2(2, 3)}).has_value());
}

TEST_CASE("line parameterization is canonical") {
    const double alpha = 0.7, c = 1.3;
    const double raw_a[2] = {alpha, c};
    const double raw_b[2] = {alpha + std::numbers::pi, -c};
    const auto a = Instance::make(ModelClassId::Line2D, raw_a);
    const auto b = Instance::make(ModelClassId::Line2D, raw_b);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->params[0] == doctest::Approx(b->params[0]).epsilon(1e-12));
    CHECK(a->params[1] == doctest::Approx(b->params[1]).epsilon(1e-12));
    for (double x : {-3.0, 0.0, 5.0})
        CHECK(residual(*a, pt2(x, 2 * x)) == doctest::Approx(residual(*b, pt2(x, 2 * x))));
}

TEST_CASE("line residual: x-axis") {
    const double raw[2] = {std::numbers::pi / 2, 0.0};
    const auto inst = Instance::make(ModelClassId::Line2D, raw);
    REQUIRE(inst.has_value());
    CHECK(residual(*inst, pt2(7, 3)) == doctest::Approx(3.0));
}

TEST_CASE("circumcircle of three points") {
    const auto inst =
        fit_minimal(ModelClassId::Circle2D, {pt2(1, 0), pt2(0, 1), pt2(-1, 0)});
    REQUIRE(inst.has_value());
    CHECK(inst->params[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(inst->params[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(inst->params[2] == doctest::Approx(1.0));
    CHECK(residual(*inst, pt2(2, 0)) == doctest::Approx(1.0));
}

TEST_CASE("circle degenerate: collinear sample") {
    CHECK_FALSE(
        fit_minimal(ModelClassId::Circle2D, {pt2(0, 0), pt2(1, 1), pt2(2, 2)}).has_value());
    CHECK_FALSE(
        fit_minimal(ModelClassId::Circle2D, {pt2(0, 5), pt2(1, 5), pt2(2, 5)}).has_value());
}

TEST_CASE("homography: identity correspondences") {
    const auto inst = fit_minimal(
        ModelClassId::Homography,
        {corr(0, 0, 0, 0), corr(1, 0, 1, 0), corr(0, 1, 0, 1), corr(1, 1, 1, 1)});
    REQUIRE(inst.has_value());
    const Eigen::Matrix3d expected = canonical_h(Eigen::Matrix3d::Identity());
    for (int i = 0; i < 9; ++i)
        CHECK(inst->params[i] == doctest::Approx(expected(i / 3, i % 3)).epsilon(1e-9));
    CHECK(residual(*inst, corr(5, 5, 5, 8)) == doctest::Approx(3.0));
}

TEST_CASE("homography recovery from synthesized correspondences") {
    RandomEngine rng(42);
    int tested = 0;
    while (tested < 20) {
        Eigen::Matrix3d h;
        for (int i = 0; i < 9; ++i) h(i / 3, i % 3) = rng.uniform(-1.0, 1.0);
        h(2, 2) = 1.0;
        Eigen::JacobiSVD<Eigen::Matrix3d> svd(h);
        const double cond =
            svd.singularValues()(0) / std::max(svd.singularValues()(2), 1e-300);
        if (!(cond < 100.0)) continue;
        ++tested;

        std::vector<Correspondence> cs;
        bool usable = true;
        RandomEngine point_rng(1000 + tested);
        for (int i = 0; i < 4; ++i) {
            const Eigen::Vector2d s(point_rng.uniform(-5, 5), point_rng.uniform(-5, 5));
            const Eigen::Vector3d q = h * s.homogeneous();
            if (std::abs(q.z()) < 0.1) {
                usable = false;
                break;
            }
            cs.push_back({s, q.hnormalized()});
        }
        if (!usable) {
            --tested;
            continue;
        }

        const auto inst = fit_minimal(ModelClassId::Homography, cs);
        if (!inst) continue;  // sampled a degenerate quadruple; try the next H
        const Eigen::Matrix3d expected = canonical_h(h);
        for (int i = 0; i < 9; ++i)
            CHECK(std::abs(inst->params[i] - expected(i / 3, i % 3)) < 1e-6);
    }
}

TEST_CASE("homography refit reproduces the model on exact data") {
    Eigen::Matrix3d h;
    h << 0.9, 0.1, 5.0, -0.05, 1.1, -3.0, 1e-4, -2e-4, 1.0;
    RandomEngine rng(55);
    std::vector<Correspondence> cs;
    for (int i = 0; i < 10; ++i) {
        const Eigen::Vector2d s(rng.uniform(-50, 50), rng.uniform(-50, 50));
        cs.push_back({s, apply_h(h, s)});
    }
    const DataMatrix data = pack_correspondences(cs);
    std::vector<size_t> all(cs.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    const auto inst = refit(ModelClassId::Homography, data, all);
    REQUIRE(inst.has_value());
    for (size_t i = 0; i < cs.size(); ++i)
        CHECK(residual(*inst, data, i) < 1e-9);
}

TEST_CASE("homography degenerate: three collinear points") {
    const auto inst = fit_minimal(
        ModelClassId::Homography,
        {corr(0, 0, 0, 0), corr(1, 1, 1, 1), corr(2, 2, 2, 2), corr(1, 0, 1, 0)});
    CHECK_FALSE(inst.has_value());
}

TEST_CASE("homography fit is invariant to similarity transforms") {
    RandomEngine rng(7);
    std::vector<Correspondence> cs;
    for (int i = 0; i < 12; ++i) {
        const double x = rng.uniform(100, 500), y = rng.uniform(100, 500);
        cs.push_back(corr(x, y, 0.8 * x + 0.1 * y + 3.0 + rng.next_gaussian() * 0.05,
                          -0.05 * x + 1.1 * y - 7.0 + rng.next_gaussian() * 0.05));
    }
    const DataMatrix data = pack_correspondences(cs);
    std::vector<size_t> all(cs.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    const auto base = refit(ModelClassId::Homography, data, all);
    REQUIRE(base.has_value());

    // similarity transform on both images: rotate, scale, translate
    const double angle = 0.3, scale = 2.5, tx = 40.0, ty = -90.0;
    std::vector<Correspondence> moved;
    for (const auto& c : cs) {
        auto tf = [&](const Eigen::Vector2d& p) {
            return Eigen::Vector2d(
                scale * (std::cos(angle) * p.x() - std::sin(angle) * p.y()) + tx,
                scale * (std::sin(angle) * p.x() + std::cos(angle) * p.y()) + ty);
        };
        moved.push_back({tf(c.source), tf(c.target)});
    }
    const DataMatrix moved_data = pack_correspondences(moved);
    const auto transformed = refit(ModelClassId::Homography, moved_data, all);
    REQUIRE(transformed.has_value());

    // transfer errors in the transformed frame scale by the similarity factor
    for (size_t i = 0; i < cs.size(); ++i) {
        const double r0 = residual(*base, data, i);
        const double r1 = residual(*transformed, moved_data, i);
        CHECK(std::abs(r1 - scale * r0) < 1e-6 * scale);
    }
}

TEST_CASE("plane minimal fit") {
    const auto inst =
        fit_minimal(ModelClassId::Plane3D, {pt3(0, 0, 0), pt3(1, 0, 0), pt3(0, 1, 0)});
    REQUIRE(inst.has_value());
    CHECK(std::abs(inst->params[2]) == doctest::Approx(1.0));
    CHECK(inst->params[3] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(residual(*inst, pt3(4, -2, 5)) == doctest::Approx(5.0));
}

TEST_CASE("plane refit over 3 exact points equals minimal fit") {
    const std::vector<Point> pts{pt3(1, 2, 3), pt3(4, 0, -1), pt3(-2, 5, 2)};
    const auto minimal = fit_minimal(ModelClassId::Plane3D, pts);
    const DataMatrix data = pack_points(pts);
    const std::vector<size_t> all{0, 1, 2};
    const auto refitted = refit(ModelClassId::Plane3D, data, all);
    REQUIRE(minimal.has_value());
    REQUIRE(refitted.has_value());
    for (int i = 0; i < 4; ++i)
        CHECK(minimal->params[i] == doctest::Approx(refitted->params[i]).epsilon(1e-9));
}

TEST_CASE("line refit: exact points give zero residual") {
    std::vector<Point> pts;
    for (int i = 0; i < 100; ++i) {
        const double x = 0.1 * i - 3.0;
        pts.push_back(pt2(x, 2.0 * x + 1.0));
    }
    const DataMatrix data = pack_points(pts);
    std::vector<size_t> all(pts.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    const auto inst = refit(ModelClassId::Line2D, data, all);
    REQUIRE(inst.has_value());
    for (size_t i = 0; i < pts.size(); ++i)
        CHECK(residual(*inst, data, i) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("line refit matches the closed-form TLS oracle") {
    // Oracle: principal direction from the half-angle formula, a route
    // independent of the eigensolver used by refit.
    std::vector<Point> pts;
    RandomEngine rng(3);
    for (int i = 0; i < 40; ++i) {
        const double x = rng.uniform(-10, 10);
        pts.push_back(pt2(x, 0.5 * x - 2.0));
    }
    pts.push_back(pt2(3.0, 0.5 * 3.0 - 2.0 + 0.8));  // one perturbed point

    double mx = 0, my = 0;
    for (const auto& p : pts) {
        mx += p.coords.x();
        my += p.coords.y();
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& p : pts) {
        const double dx = p.coords.x() - mx, dy = p.coords.y() - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    const double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);  // principal direction
    const double nx = -std::sin(theta), ny = std::cos(theta);
    const double c = -(nx * mx + ny * my);

    const DataMatrix data = pack_points(pts);
    std::vector<size_t> all(pts.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    const auto inst = refit(ModelClassId::Line2D, data, all);
    REQUIRE(inst.has_value());
    for (size_t i = 0; i < pts.size(); ++i) {
        const double oracle =
            std::abs(nx * pts[i].coords.x() + ny * pts[i].coords.y() + c);
        CHECK(residual(*inst, data, i) == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("circle refit is exact on exact circle points") {
    std::vector<Point> pts;
    const double cx = 3.0, cy = -2.0, r = 5.0;
    for (int i = 0; i < 24; ++i) {
        const double t = 2.0 * std::numbers::pi * i / 24.0;
        pts.push_back(pt2(cx + r * std::cos(t), cy + r * std::sin(t)));
    }
    const DataMatrix data = pack_points(pts);
    std::vector<size_t> all(pts.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    const auto inst = refit(ModelClassId::Circle2D, data, all);
    REQUIRE(inst.has_value());
    CHECK(inst->params[0] == doctest::Approx(cx).epsilon(1e-9));
    CHECK(inst->params[1] == doctest::Approx(cy).epsilon(1e-9));
    CHECK(inst->params[2] == doctest::Approx(r).epsilon(1e-9));
}

TEST_CASE("circle refit rejects collinear support") {
    std::vector<Point> pts;
    for (int i = 0; i < 10; ++i) pts.push_back(pt2(i, 2.0 * i));
    const DataMatrix data = pack_points(pts);
    std::vector<size_t> all(pts.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    CHECK_FALSE(refit(ModelClassId::Circle2D, data, all).has_value());
}

namespace {

std::vector<Point> cylinder_points(const Eigen::Vector3d& axis_point,
                                   const Eigen::Vector3d& axis, double radius, int count,
                                   RandomEngine& rng) {
    const Eigen::Vector3d a = axis.normalized();
    const Eigen::Vector3d ref =
        std::abs(a.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    const Eigen::Vector3d u = (ref - ref.dot(a) * a).normalized();
    const Eigen::Vector3d v = a.cross(u);
    std::vector<Point> pts;
    for (int i = 0; i < count; ++i) {
        const double t = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double h = rng.uniform(-3.0, 3.0);
        const Eigen::Vector3d radial = std::cos(t) * u + std::sin(t) * v;
        const Eigen::Vector3d p = axis_point + radius * radial + h * a;
        Point point;
        point.coords = p;
        point.dim = 3;
        point.normal = radial;
        pts.push_back(point);
    }
    return pts;
}

}  // namespace

TEST_CASE("cylinder minimal fit from two oriented points") {
    RandomEngine rng(11);
    const Eigen::Vector3d axis_point(1.0, 2.0, -0.5);
    const Eigen::Vector3d axis = Eigen::Vector3d(0.3, 0.9, 0.4).normalized();
    const double radius = 2.0;
    const auto pts = cylinder_points(axis_point, axis, radius, 2, rng);
    const auto inst = fit_minimal(ModelClassId::Cylinder3D, pts);
    REQUIRE(inst.has_value());
    CHECK(inst->params[6] == doctest::Approx(radius).epsilon(1e-9));
    const Eigen::Vector3d fitted_axis(inst->params[3], inst->params[4], inst->params[5]);
    CHECK(std::abs(fitted_axis.dot(axis)) == doctest::Approx(1.0).epsilon(1e-9));
    for (const auto& p : pts) CHECK(residual(*inst, p) < 1e-6);
}

TEST_CASE("cylinder degenerate: parallel normals") {
    const auto inst = fit_minimal(
        ModelClassId::Cylinder3D,
        {oriented(0, 0, 0, 1, 0, 0), oriented(0, 2, 5, 1, 0, 0)});
    CHECK_FALSE(inst.has_value());
}

TEST_CASE("cylinder refit on exact points") {
    RandomEngine rng(23);
    const Eigen::Vector3d axis_point(-1.0, 0.5, 2.0);
    const Eigen::Vector3d axis = Eigen::Vector3d(1.0, -0.2, 0.1).normalized();
    const double radius = 1.5;
    const auto pts = cylinder_points(axis_point, axis, radius, 60, rng);
    const DataMatrix data = pack_points(pts);
    std::vector<size_t> all(pts.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    const auto inst = refit(ModelClassId::Cylinder3D, data, all);
    REQUIRE(inst.has_value());
    CHECK(inst->params[6] == doctest::Approx(radius).epsilon(1e-9));
    for (size_t i = 0; i < pts.size(); ++i)
        CHECK(residual(*inst, data, i) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("minimal fits have zero residual on their samples") {
    RandomEngine rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Point> line_pts{pt2(rng.uniform(-9, 9), rng.uniform(-9, 9)),
                                    pt2(rng.uniform(-9, 9), rng.uniform(-9, 9))};
        if (auto inst = fit_minimal(ModelClassId::Line2D, line_pts))
            for (const auto& p : line_pts) CHECK(residual(*inst, p) < 1e-6);

        std::vector<Point> circle_pts{pt2(rng.uniform(-9, 9), rng.uniform(-9, 9)),
                                      pt2(rng.uniform(-9, 9), rng.uniform(-9, 9)),
                                      pt2(rng.uniform(-9, 9), rng.uniform(-9, 9))};
        if (auto inst = fit_minimal(ModelClassId::Circle2D, circle_pts))
            for (const auto& p : circle_pts) CHECK(residual(*inst, p) < 1e-6);

        std::vector<Correspondence> cs;
        for (int i = 0; i < 4; ++i)
            cs.push_back(corr(rng.uniform(-9, 9), rng.uniform(-9, 9), rng.uniform(-9, 9),
                              rng.uniform(-9, 9)));
        if (auto inst = fit_minimal(ModelClassId::Homography, cs))
            for (const auto& c : cs) CHECK(residual(*inst, c) < 1e-6);

        std::vector<Point> plane_pts{
            pt3(rng.uniform(-9, 9), rng.uniform(-9, 9), rng.uniform(-9, 9)),
            pt3(rng.uniform(-9, 9), rng.uniform(-9, 9), rng.uniform(-9, 9)),
            pt3(rng.uniform(-9, 9), rng.uniform(-9, 9), rng.uniform(-9, 9))};
        if (auto inst = fit_minimal(ModelClassId::Plane3D, plane_pts))
            for (const auto& p : plane_pts) CHECK(residual(*inst, p) < 1e-6);
    }
}

TEST_CASE("outlier class has constant distance") {
    const Instance inst = Instance::make_outlier(2.5);
    CHECK(residual(inst, pt2(0, 0)) == doctest::Approx(2.5));
    CHECK(residual(inst, pt2(1000, -3)) == doctest::Approx(2.5));
    CHECK(inst.params.empty());
}

TEST_CASE("model class table") {
    CHECK(model_class(ModelClassId::Line2D).minimal_sample_size == 2);
    CHECK(model_class(ModelClassId::Circle2D).minimal_sample_size == 3);
    CHECK(model_class(ModelClassId::Homography).minimal_sample_size == 4);
    CHECK(model_class(ModelClassId::Plane3D).minimal_sample_size == 3);
    CHECK(model_class(ModelClassId::Cylinder3D).minimal_sample_size == 2);
    CHECK(model_class(ModelClassId::Outlier).minimal_sample_size == 0);
    CHECK(model_class_by_name("line") == ModelClassId::Line2D);
    CHECK(model_class_by_name("homography") == ModelClassId::Homography);
    CHECK_FALSE(model_class_by_name("frobnicator").has_value());
}
