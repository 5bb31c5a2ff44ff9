#pragma once

#include "progx/metrics.hpp"
#include "progx/pipeline.hpp"
#include "progx/scene.hpp"

#include <span>
#include <string>

namespace progx {

// Result JSON schema: {instances, labels, energy, snapshots, config,
// timing_ms} with numbers at 17 significant digits and a fixed key order,
// so identical runs serialize byte-identically (timing fields aside).
std::string result_to_json(const FittingResult& result, const ProgXConfig& config,
                           bool include_snapshots);

void write_result_json(const FittingResult& result, const ProgXConfig& config,
                       bool include_snapshots, const std::string& path);

// Reads back what result_to_json wrote (instances, labels, energy).
FittingResult result_from_json(const std::string& text);
FittingResult read_result_json(const std::string& path);

// Scatter plot of the labeling: points colored by label, outliers white on
// a dark background. labels uses the external convention (0 = outlier).
std::string scene_to_svg(const Scene& scene, std::span<const int> labels);
void write_scene_svg(const Scene& scene, std::span<const int> labels,
                     const std::string& path);

}  // namespace progx
