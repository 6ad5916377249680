// svg.hpp — Minimal static SVG line plots for the CLI output. The CSV files
// are the contract; these figures are a convenience layer on top.

#pragma once

#include <string>
#include <vector>

namespace redreg::cli {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Writes a single-panel line plot with axes, ticks, and a legend.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<Series>& series);

} // namespace redreg::cli
