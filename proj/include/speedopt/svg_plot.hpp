#pragma once

// Minimal static chart rendering for batch outputs: a Pareto scatter and
// a multi-series line chart, written as standalone SVG.

#include <iosfwd>
#include <string>
#include <vector>

namespace speedopt {

struct PlotPoint {
    double x = 0.0;
    double y = 0.0;
    std::string label;  // rendered next to the marker when non-empty
};

struct PlotSeries {
    std::string name;
    std::vector<PlotPoint> points;
};

void write_scatter_svg(std::ostream& os, const std::vector<PlotSeries>& series,
                       const std::string& title, const std::string& x_label,
                       const std::string& y_label, bool label_points = true);

void write_lines_svg(std::ostream& os, const std::vector<PlotSeries>& series,
                     const std::string& title, const std::string& x_label,
                     const std::string& y_label);

}  // namespace speedopt
