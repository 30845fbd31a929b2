#pragma once

#include <string>
#include <vector>

namespace dritz {

struct ErrorBarPoint {
    double x;
    double mean;
    double std;
};

struct ErrorBarSeries {
    std::string name;
    std::vector<ErrorBarPoint> points;
};

// Standalone SVG error-bar chart with a log10 x axis. Rendering is a pure
// function of the inputs, so identical data gives byte-identical output.
std::string error_bar_chart_svg(const std::string& title,
                                const std::string& x_label,
                                const std::string& y_label,
                                const std::vector<ErrorBarSeries>& series);

struct LinePoint {
    double x;
    double y;
};

// Line chart with linear x and log10 y (values clamped below at 1e-16).
std::string line_chart_svg(const std::string& title,
                           const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<LinePoint>& points);

} // namespace dritz
