#pragma once

#include <string>
#include <vector>

namespace raman::cli {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool zero_line = false; ///< draw y = 0 when it falls inside the range
};

/// Self-contained static SVG line plot: inline styles, no scripts, no external assets.
std::string render_svg(const PlotSpec& spec, const std::vector<PlotSeries>& series);

} // namespace raman::cli
