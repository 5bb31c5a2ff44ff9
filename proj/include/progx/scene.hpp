#pragma once

#include "progx/geometry.hpp"
#include "progx/random.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace progx {

struct SceneMetadata {
    std::string generator;  // "star", "stair" or "file"
    uint64_t seed = 0;
    double noise_sigma = 0.0;
    double outlier_ratio = 0.0;
    std::array<double, 4> bbox{0.0, 0.0, 0.0, 0.0};  // xmin ymin xmax ymax
};

struct Scene {
    DataMatrix data;
    bool correspondences = false;
    std::vector<int> ground_truth;  // empty, or one id per point; 0 = outlier
    SceneMetadata meta;

    size_t point_count() const { return data.rows(); }
    int ground_truth_clusters() const;  // non-outlier cluster count
};

// n_lines segments through a common central region at equal angular
// spacing; inliers perturbed orthogonally by N(0, sigma^2); outliers drawn
// uniformly in the bbox so that the outlier ratio is nu.
Scene gen_star(int n_lines, int points_per_line, double sigma, double nu,
               std::array<double, 4> bbox, RandomEngine& rng);

// Axis-aligned alternating horizontal/vertical segments in a staircase
// arrangement; same noise and outlier protocol.
Scene gen_stair(int n_segments, int points_per_line, double sigma, double nu,
                std::array<double, 4> bbox, RandomEngine& rng);

enum class SceneFormat { XY, XYZ, Corr };

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, size_t line)
        : std::runtime_error(message + " (line " + std::to_string(line) + ")"),
          line_(line) {}
    size_t line() const { return line_; }

private:
    size_t line_;
};

// Whitespace-separated columns with '#'-prefixed header comments. Layout
// per format: xy "x y [gt]", xyz "x y z [nx ny nz] [gt]", corr
// "x1 y1 x2 y2 [gt]". Without an explicit format the header must name the
// columns. Throws ParseError / std::runtime_error.
Scene load_scene(const std::string& path, std::optional<SceneFormat> format = std::nullopt);
void save_scene(const Scene& scene, const std::string& path);

}  // namespace progx
