#pragma once

#include <string>
#include <vector>

namespace oneq::cli {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool points_only = false;
};

/// Writes a static SVG line/scatter chart.
void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<Series>& series);

}  // namespace oneq::cli
