#pragma once

#include <string>
#include <utility>
#include <vector>

namespace covertime {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    int width = 720;
    int height = 480;
};

/// Self-contained SVG line chart: axes with ticks, one polyline per series,
/// and a legend. Empty series are listed in the legend but not drawn.
std::string render_line_chart(const PlotSpec& spec, const std::vector<PlotSeries>& series);

} // namespace covertime
