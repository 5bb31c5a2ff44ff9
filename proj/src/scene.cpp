#include "progx/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace progx {
namespace {

size_t outlier_count_for_ratio(double nu, size_t inlier_count) {
    if (nu <= 0.0) return 0;
    return static_cast<size_t>(
        std::ceil(nu / (1.0 - nu) * static_cast<double>(inlier_count)));
}

void append_uniform_outliers(std::vector<std::array<double, 2>>& pts, std::vector<int>& gt,
                             size_t count, const std::array<double, 4>& bbox,
                             RandomEngine& rng) {
    for (size_t i = 0; i < count; ++i) {
        pts.push_back({rng.uniform(bbox[0], bbox[2]), rng.uniform(bbox[1], bbox[3])});
        gt.push_back(0);
    }
}

Scene pack_scene_2d(const std::vector<std::array<double, 2>>& pts, std::vector<int> gt,
                    SceneMetadata meta) {
    Scene scene;
    scene.data = DataMatrix(pts.size(), 2, 2);
    for (size_t i = 0; i < pts.size(); ++i) {
        scene.data(i, 0) = pts[i][0];
        scene.data(i, 1) = pts[i][1];
    }
    scene.ground_truth = std::move(gt);
    scene.meta = std::move(meta);
    return scene;
}

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

int Scene::ground_truth_clusters() const {
    std::set<int> ids;
    for (int g : ground_truth)
        if (g > 0) ids.insert(g);
    return static_cast<int>(ids.size());
}

Scene gen_star(int n_lines, int points_per_line, double sigma, double nu,
               std::array<double, 4> bbox, RandomEngine& rng) {
    if (n_lines < 1 || points_per_line < 1 || nu < 0.0 || nu >= 1.0)
        throw std::invalid_argument("gen_star: bad parameters");
    const double cx = 0.5 * (bbox[0] + bbox[2]);
    const double cy = 0.5 * (bbox[1] + bbox[3]);
    const double extent = 0.45 * std::min(bbox[2] - bbox[0], bbox[3] - bbox[1]);
    const double gap = 0.08 * extent;  // hollow center, as in the star scenes

    std::vector<std::array<double, 2>> pts;
    std::vector<int> gt;
    for (int line = 0; line < n_lines; ++line) {
        const double theta = std::numbers::pi * static_cast<double>(line) / n_lines;
        const double dx = std::cos(theta), dy = std::sin(theta);
        for (int i = 0; i < points_per_line; ++i) {
            double t = rng.uniform(gap, extent);
            if (rng.next_u64() & 1) t = -t;
            const double noise = sigma * rng.next_gaussian();
            pts.push_back({cx + t * dx - noise * dy, cy + t * dy + noise * dx});
            gt.push_back(line + 1);
        }
    }
    append_uniform_outliers(pts, gt, outlier_count_for_ratio(nu, pts.size()), bbox, rng);

    SceneMetadata meta;
    meta.generator = "star";
    meta.noise_sigma = sigma;
    meta.outlier_ratio = nu;
    meta.bbox = bbox;
    return pack_scene_2d(pts, std::move(gt), std::move(meta));
}

Scene gen_stair(int n_segments, int points_per_line, double sigma, double nu,
                std::array<double, 4> bbox, RandomEngine& rng) {
    if (n_segments < 1 || points_per_line < 1 || nu < 0.0 || nu >= 1.0)
        throw std::invalid_argument("gen_stair: bad parameters");
    const int n_horizontal = (n_segments + 1) / 2;
    const int n_vertical = n_segments / 2;
    const double width = bbox[2] - bbox[0], height = bbox[3] - bbox[1];
    const double step = 0.8 * std::min(width / std::max(n_horizontal, 1),
                                       height / std::max(n_vertical, 1));
    double x = 0.5 * (bbox[0] + bbox[2]) - 0.5 * step * n_horizontal;
    double y = 0.5 * (bbox[1] + bbox[3]) - 0.5 * step * n_vertical;

    std::vector<std::array<double, 2>> pts;
    std::vector<int> gt;
    for (int seg = 0; seg < n_segments; ++seg) {
        const bool horizontal = (seg % 2) == 0;
        for (int i = 0; i < points_per_line; ++i) {
            // open interval keeps corner points out of two clusters
            const double t = rng.uniform(1e-6 * step, step * (1.0 - 1e-6));
            const double noise = sigma * rng.next_gaussian();
            if (horizontal)
                pts.push_back({x + t, y + noise});
            else
                pts.push_back({x + noise, y + t});
            gt.push_back(seg + 1);
        }
        if (horizontal)
            x += step;
        else
            y += step;
    }
    append_uniform_outliers(pts, gt, outlier_count_for_ratio(nu, pts.size()), bbox, rng);

    SceneMetadata meta;
    meta.generator = "stair";
    meta.noise_sigma = sigma;
    meta.outlier_ratio = nu;
    meta.bbox = bbox;
    return pack_scene_2d(pts, std::move(gt), std::move(meta));
}

namespace {

struct ColumnLayout {
    int coords = 2;       // 2, 3 or 4 (correspondence)
    bool normals = false;
    bool gt = false;
    bool correspondences = false;

    size_t total() const {
        return static_cast<size_t>(coords) + (normals ? 3 : 0) + (gt ? 1 : 0);
    }
};

std::optional<ColumnLayout> layout_from_names(const std::vector<std::string>& names) {
    ColumnLayout l;
    std::vector<std::string> base;
    for (const auto& n : names) {
        if (n == "gt")
            l.gt = true;
        else
            base.push_back(n);
    }
    const std::vector<std::string> xy{"x", "y"}, xyz{"x", "y", "z"},
        oriented{"x", "y", "z", "nx", "ny", "nz"}, corr{"x1", "y1", "x2", "y2"};
    if (base == xy) {
        l.coords = 2;
    } else if (base == xyz) {
        l.coords = 3;
    } else if (base == oriented) {
        l.coords = 3;
        l.normals = true;
    } else if (base == corr) {
        l.coords = 4;
        l.correspondences = true;
    } else {
        return std::nullopt;
    }
    return l;
}

ColumnLayout layout_from_format(SceneFormat format, size_t columns, size_t line_no) {
    ColumnLayout l;
    switch (format) {
        case SceneFormat::XY:
            l.coords = 2;
            if (columns == 3) l.gt = true;
            else if (columns != 2) throw ParseError("expected 2 or 3 columns", line_no);
            break;
        case SceneFormat::XYZ:
            l.coords = 3;
            if (columns == 4) l.gt = true;
            else if (columns == 6) l.normals = true;
            else if (columns == 7) { l.normals = true; l.gt = true; }
            else if (columns != 3) throw ParseError("expected 3, 4, 6 or 7 columns", line_no);
            break;
        case SceneFormat::Corr:
            l.coords = 4;
            l.correspondences = true;
            if (columns == 5) l.gt = true;
            else if (columns != 4) throw ParseError("expected 4 or 5 columns", line_no);
            break;
    }
    return l;
}

}  // namespace

Scene load_scene(const std::string& path, std::optional<SceneFormat> format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scene file: " + path);

    Scene scene;
    scene.meta.generator = "file";
    std::optional<ColumnLayout> layout;
    std::vector<std::vector<double>> rows;
    std::string line;
    size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string key;
            hs >> key;
            if (key == "generator") hs >> scene.meta.generator;
            else if (key == "seed") hs >> scene.meta.seed;
            else if (key == "sigma") hs >> scene.meta.noise_sigma;
            else if (key == "nu") hs >> scene.meta.outlier_ratio;
            else if (key == "bbox")
                hs >> scene.meta.bbox[0] >> scene.meta.bbox[1] >> scene.meta.bbox[2] >>
                    scene.meta.bbox[3];
            else if (key == "columns") {
                std::vector<std::string> names;
                std::string n;
                while (hs >> n) names.push_back(n);
                layout = layout_from_names(names);
                if (!layout) throw ParseError("unrecognized column layout", line_no);
            }
            continue;
        }

        std::istringstream ls(line);
        std::vector<double> values;
        double v;
        while (ls >> v) values.push_back(v);
        if (!ls.eof()) throw ParseError("malformed number", line_no);
        if (values.empty()) continue;

        if (!layout) {
            if (!format) throw ParseError("no column header and no format given", line_no);
            layout = layout_from_format(*format, values.size(), line_no);
        }
        if (values.size() != layout->total())
            throw ParseError("wrong column count", line_no);
        for (size_t c = 0; c + (layout->gt ? 1 : 0) < values.size(); ++c)
            if (!std::isfinite(values[c])) throw ParseError("nonfinite value", line_no);
        rows.push_back(std::move(values));
    }
    if (rows.empty()) throw std::runtime_error("scene file has no points: " + path);

    const ColumnLayout& l = *layout;
    const size_t cols = static_cast<size_t>(l.coords) + (l.normals ? 3 : 0);
    const size_t spatial = l.correspondences ? 4 : static_cast<size_t>(l.coords);
    scene.data = DataMatrix(rows.size(), cols, spatial);
    scene.correspondences = l.correspondences;
    if (l.gt) scene.ground_truth.resize(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t c = 0; c < cols; ++c) scene.data(i, c) = rows[i][c];
        if (l.gt) scene.ground_truth[i] = static_cast<int>(rows[i][cols]);
    }
    return scene;
}

void save_scene(const Scene& scene, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scene file: " + path);

    out << "# progx scene\n";
    out << "# generator " << scene.meta.generator << "\n";
    out << "# seed " << scene.meta.seed << "\n";
    out << "# sigma " << format17(scene.meta.noise_sigma) << "\n";
    out << "# nu " << format17(scene.meta.outlier_ratio) << "\n";
    out << "# bbox " << format17(scene.meta.bbox[0]) << " " << format17(scene.meta.bbox[1])
        << " " << format17(scene.meta.bbox[2]) << " " << format17(scene.meta.bbox[3]) << "\n";

    out << "# columns";
    const size_t cols = scene.data.cols();
    if (scene.correspondences) {
        out << " x1 y1 x2 y2";
    } else if (cols >= 6) {
        out << " x y z nx ny nz";
    } else if (cols == 3) {
        out << " x y z";
    } else {
        out << " x y";
    }
    const bool gt = !scene.ground_truth.empty();
    if (gt) out << " gt";
    out << "\n";

    for (size_t i = 0; i < scene.data.rows(); ++i) {
        for (size_t c = 0; c < cols; ++c) {
            if (c) out << " ";
            out << format17(scene.data(i, c));
        }
        if (gt) out << " " << scene.ground_truth[i];
        out << "\n";
    }
}

}  // namespace progx
