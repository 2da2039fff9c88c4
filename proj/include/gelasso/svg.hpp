#pragma once

#include <string>
#include <vector>

#include "gelasso/sim.hpp"

namespace gelasso {

// Renders one metric's summary as an SVG panel grid: columns are gamma
// values, rows are data types, x positions are sample sizes and box color
// encodes R. `rows` must all carry the same metric name.
void render_metric_boxplots(const std::string& path,
                            const std::string& metric_label,
                            const std::vector<SummaryRow>& rows);

// Convenience: split a full summary by metric and write one SVG per metric
// into `out_dir` (sensitivity.svg, specificity.svg, weight_correlation.svg).
// Returns the written paths.
std::vector<std::string> render_all_metrics(const std::string& out_dir,
                                            const std::vector<SummaryRow>& rows);

}  // namespace gelasso
