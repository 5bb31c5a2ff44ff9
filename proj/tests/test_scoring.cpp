#include "progx/scoring.hpp"

#include "progx/random.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace progx;

namespace {

DataMatrix points2d(const std::vector<std::pair<double, double>>& pts) {
    DataMatrix m(pts.size(), 2, 2);
    for (size_t i = 0; i < pts.size(); ++i) {
        m(i, 0) = pts[i].first;
        m(i, 1) = pts[i].second;
    }
    return m;
}

Instance x_axis() {
    const double raw[2] = {std::numbers::pi / 2, 0.0};
    return *Instance::make(ModelClassId::Line2D, raw);
}

Instance y_axis() {
    const double raw[2] = {0.0, 0.0};
    return *Instance::make(ModelClassId::Line2D, raw);
}

Instance horizontal_line(double y) {
    const double raw[2] = {std::numbers::pi / 2, -y};
    return *Instance::make(ModelClassId::Line2D, raw);
}

}  // namespace

TEST_CASE("compound distance: union of distance fields with cache updates") {
    const auto data = points2d({{2.0, 5.0}});
    CompoundModel cm(data);
    CHECK(cm.distance(0) == std::numeric_limits<double>::infinity());

    cm.add(x_axis(), 1.0);   // distance |y| = 5
    cm.add(y_axis(), 1.0);   // distance |x| = 2
    CHECK(cm.distance(0) == doctest::Approx(2.0));

    cm.remove(1);  // drop the y axis; full recompute
    CHECK(cm.distance(0) == doctest::Approx(5.0));
}

TEST_CASE("quality_ransac counts strict inliers") {
    const auto data = points2d({{0, 0}, {0, 3}, {10, 0.5}});
    const Instance line = x_axis();
    CHECK(quality_ransac(line, data, 1.0) == 2);
    CHECK(quality_ransac(line, data, 5.0) == 3);
    const DataMatrix empty(0, 2, 2);
    CHECK(quality_ransac(line, empty, 1.0) == 0);
}

TEST_CASE("quality_ransac_conditioned") {
    const auto data = points2d({{0, 0}, {1, 0.1}, {2, -0.2}, {3, 0}, {4, 0.3}});
    const Instance line = x_axis();
    CompoundModel cm(data);
    SUBCASE("empty compound equals plain quality") {
        CHECK(quality_ransac_conditioned(line, cm, data, 0.5) ==
              quality_ransac(line, data, 0.5));
    }
    SUBCASE("compound containing the instance zeroes the quality") {
        cm.add(line, 0.5);
        CHECK(quality_ransac_conditioned(line, cm, data, 0.5) == 0);
    }
}

TEST_CASE("quality_ransac_conditioned: partial overlap constructed directly") {
    // 10 inliers of the x axis; 4 of them also near a second line (y = x axis
    // overlap via horizontal line through 0.05), 6 conditioned survivors
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 10; ++i) pts.emplace_back(i, 0.0);
    const auto data = points2d(pts);
    const Instance line = x_axis();
    CompoundModel cm(data);
    // vertical lines through x = 0..3 cover exactly 4 of the inliers
    for (int i = 0; i < 4; ++i) {
        const double raw[2] = {0.0, -static_cast<double>(i)};
        cm.add(*Instance::make(ModelClassId::Line2D, raw), 0.5);
    }
    CHECK(quality_ransac(line, data, 0.5) == 10);
    CHECK(quality_ransac_conditioned(line, cm, data, 0.5) == 6);
}

TEST_CASE("quality_msac plug-in values") {
    const Instance line = x_axis();
    const double eps = 1.0, gamma = msac_gamma(eps);
    CHECK(quality_msac(line, points2d({{0.0, 0.0}}), eps) == doctest::Approx(1.0));
    CHECK(quality_msac(line, points2d({{0.0, gamma / 2}}), eps) == doctest::Approx(0.75));
    CHECK(quality_msac(line, points2d({{0.0, gamma}}), eps) == doctest::Approx(0.0));
    CHECK(quality_msac(line, points2d({{0.0, 10 * gamma}}), eps) == doctest::Approx(0.0));
}

TEST_CASE("quality_msac_conditioned plug-in values") {
    const double eps = 1.0, gamma = msac_gamma(eps);
    const Instance line = x_axis();

    SUBCASE("close to proposal, far from compound: full score") {
        const auto data = points2d({{0.0, 0.0}});
        CompoundModel cm(data);
        cm.add(horizontal_line(10.0), eps);  // compound distance 10 >> gamma
        CHECK(quality_msac_conditioned(line, cm, data, eps) == doctest::Approx(1.0));
    }
    SUBCASE("shared point contributes nothing") {
        const auto data = points2d({{0.0, 0.0}});
        CompoundModel cm(data);
        cm.add(x_axis(), eps);
        CHECK(quality_msac_conditioned(line, cm, data, eps) == doctest::Approx(0.0));
    }
    SUBCASE("half-gamma from both: score 0.25") {
        const auto data = points2d({{0.0, gamma / 2}});
        CompoundModel cm(data);
        cm.add(horizontal_line(gamma), eps);  // compound distance gamma/2
        CHECK(quality_msac_conditioned(line, cm, data, eps) == doctest::Approx(0.25));
    }
}

TEST_CASE("conditioned MSAC equals MSAC exactly for the empty compound") {
    RandomEngine rng(8);
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 200; ++i) pts.emplace_back(rng.uniform(-5, 5), rng.uniform(-5, 5));
    const auto data = points2d(pts);
    CompoundModel cm(data);
    const Instance line = x_axis();
    for (double eps : {0.1, 1.0, 3.0})
        CHECK(quality_msac_conditioned(line, cm, data, eps) ==
              quality_msac(line, data, eps));
}

TEST_CASE("quality ordering and monotone screening") {
    RandomEngine rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<double, double>> pts;
        const int n = 30;
        for (int i = 0; i < n; ++i)
            pts.emplace_back(rng.uniform(-10, 10), rng.uniform(-10, 10));
        const auto data = points2d(pts);
        const double eps = rng.uniform(0.2, 2.0);

        const double a = rng.uniform(0, 2 * std::numbers::pi);
        const double c = rng.uniform(-5, 5);
        const double raw[2] = {a, c};
        const Instance candidate = *Instance::make(ModelClassId::Line2D, raw);

        CompoundModel cm(data);
        double prev_msac = quality_msac_conditioned(candidate, cm, data, eps);
        size_t prev_ransac = quality_ransac_conditioned(candidate, cm, data, eps);

        CHECK(prev_msac <= quality_msac(candidate, data, eps) + 1e-12);
        CHECK(quality_msac(candidate, data, eps) <= static_cast<double>(n));
        CHECK(prev_msac >= 0.0);

        // growing the compound never increases either conditioned quality
        for (int step = 0; step < 4; ++step) {
            const double raw2[2] = {rng.uniform(0, 2 * std::numbers::pi),
                                    rng.uniform(-5, 5)};
            cm.add(*Instance::make(ModelClassId::Line2D, raw2), eps);
            const double msac = quality_msac_conditioned(candidate, cm, data, eps);
            const size_t ransac = quality_ransac_conditioned(candidate, cm, data, eps);
            CHECK(msac <= prev_msac + 1e-12);
            CHECK(ransac <= prev_ransac);
            CHECK(ransac <= quality_ransac(candidate, data, eps));
            prev_msac = msac;
            prev_ransac = ransac;
        }
    }
}
