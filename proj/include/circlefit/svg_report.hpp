#pragma once

#include <string>
#include <vector>

#include "circlefit/bench.hpp"

namespace circlefit {

// Renders one (noise x outliers) grid of aggregate values as an SVG heatmap.
// `mean_rows` must hold the trial="mean" rows of a single detector at a single
// resolution; every (noise, outliers) combination must be present or
// IncompleteGrid is thrown. Cells whose aggregate failed render as "n/a".
// Output bytes depend only on the input rows.
std::string render_heatmap(const std::vector<ResultRow>& mean_rows, const std::string& metric,
                           const std::string& title);

// Splits `rows` by resolution for one detector and writes one SVG per
// resolution into `out_dir` (created by the caller). Returns the paths
// written, coarsest quantum last.
std::vector<std::string> emit_heatmap(const std::vector<ResultRow>& rows,
                                      const std::string& metric, const std::string& detector,
                                      const std::string& out_dir);

// "continuous" for q=0, otherwise the pixel grid a 480 mm field collapses to.
std::string resolution_label(int q);

}  // namespace circlefit
