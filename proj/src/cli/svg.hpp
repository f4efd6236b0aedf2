#pragma once

#include <string>
#include <vector>

namespace talbot::cli {

/// Minimal self-contained SVG line plot: polylines and axis text only.
/// One series per y-column, deterministic output.
std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::vector<double>& x,
                          const std::vector<std::string>& series_names,
                          const std::vector<std::vector<double>>& series);

}  // namespace talbot::cli
