#include "ldphase/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace ldphase::svg {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 60.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

struct Frame {
    double x0, x1, y0, y1;

    double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); }
    double py(double y) const { return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin); }
};

Frame frame_for(const std::vector<double>& xs, const std::vector<double>& ys) {
    Frame f{0.0, 1.0, 0.0, 1.0};
    if (!xs.empty()) {
        const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
        const auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
        f = {*xmin, *xmax, *ymin, *ymax};
    }
    if (f.x1 <= f.x0) f.x1 = f.x0 + 1.0;
    if (f.y1 <= f.y0) f.y1 = f.y0 + 1.0;
    return f;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

void header(std::ostream& out, const Frame& f, const std::string& title, const std::string& xl, const std::string& yl) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << escape(title)
        << "</text>\n"
        << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin << "\" height=\""
        << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"black\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\" font-size=\"13\">"
        << escape(xl) << "</text>\n"
        << "<text x=\"15\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 15 "
        << kHeight / 2 << ")\">" << escape(yl) << "</text>\n";
    out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 16 << "\" font-size=\"11\">" << f.x0 << "</text>\n"
        << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 16
        << "\" text-anchor=\"end\" font-size=\"11\">" << f.x1 << "</text>\n"
        << "<text x=\"" << kMargin - 4 << "\" y=\"" << kHeight - kMargin << "\" text-anchor=\"end\" font-size=\"11\">"
        << f.y0 << "</text>\n"
        << "<text x=\"" << kMargin - 4 << "\" y=\"" << kMargin + 10 << "\" text-anchor=\"end\" font-size=\"11\">" << f.y1
        << "</text>\n";
}

void legend(std::ostream& out, const std::vector<std::string>& labels) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double y = kMargin + 16.0 * static_cast<double>(i + 1);
        out << "<text x=\"" << kWidth - kMargin - 6 << "\" y=\"" << y << "\" text-anchor=\"end\" font-size=\"11\" fill=\""
            << kPalette[i % 6] << "\">" << escape(labels[i]) << "</text>\n";
    }
}

}  // namespace

void write_polylines(std::ostream& out, const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<Series>& series) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xs.push_back(s.x[i]);
            ys.push_back(s.y[i]);
        }
    }
    const Frame f = frame_for(xs, ys);
    const auto old = out.precision(6);
    header(out, f, title, x_label, y_label);
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        labels.push_back(s.label);
        out << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << kPalette[k % 6] << "\" points=\"";
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            out << f.px(s.x[i]) << ',' << f.py(s.y[i]) << ' ';
        }
        out << "\"/>\n";
    }
    legend(out, labels);
    out << "</svg>\n";
    out.precision(old);
}

void write_scatter(std::ostream& out, const std::string& title, const std::string& x_label, const std::string& y_label,
                   const std::vector<Point>& points, const std::vector<std::string>& categories) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& p : points) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    const Frame f = frame_for(xs, ys);
    const auto old = out.precision(6);
    header(out, f, title, x_label, y_label);
    for (const auto& p : points) {
        out << "<circle cx=\"" << f.px(p.x) << "\" cy=\"" << f.py(p.y) << "\" r=\"3\" fill=\""
            << kPalette[static_cast<std::size_t>(std::max(p.category, 0)) % 6] << "\"/>\n";
    }
    legend(out, categories);
    out << "</svg>\n";
    out.precision(old);
}

}  // namespace ldphase::svg
