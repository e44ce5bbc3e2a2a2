#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ldphase::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct Point {
    double x;
    double y;
    int category;
};

/// Line chart on a fixed 640x480 viewport, axes scaled to the data range.
void write_polylines(std::ostream& out, const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<Series>& series);

/// Scatter chart; `categories` names the colour classes by index.
void write_scatter(std::ostream& out, const std::string& title, const std::string& x_label, const std::string& y_label,
                   const std::vector<Point>& points, const std::vector<std::string>& categories);

}  // namespace ldphase::svg
