#pragma once

// Minimal self-contained SVG line plots for the experiment figures.
// Presentation only; no external renderer involved.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace mdl {

struct PlotSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;  // (x, y)
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
};

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace detail

inline std::string render_svg_plot(const PlotSpec& spec,
                                   const std::vector<PlotSeries>& series) {
    const double width = 720, height = 480;
    const double left = 70, right = 30, top = 40, bottom = 55;
    const double plot_w = width - left - right, plot_h = height - top - bottom;

    auto tx = [&](double x) { return spec.log_x ? std::log10(x) : x; };
    auto ty = [&](double y) { return spec.log_y ? std::log10(y) : y; };

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (auto [x, y] : s.points) {
            if (spec.log_x && x <= 0) continue;
            if (spec.log_y && y <= 0) continue;
            if (!std::isfinite(tx(x)) || !std::isfinite(ty(y))) continue;
            xmin = std::min(xmin, tx(x));
            xmax = std::max(xmax, tx(x));
            ymin = std::min(ymin, ty(y));
            ymax = std::max(ymax, ty(y));
        }
    if (xmin > xmax) { xmin = 0; xmax = 1; }
    if (ymin > ymax) { ymin = 0; ymax = 1; }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return left + (tx(x) - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) {
        return top + plot_h - (ty(y) - ymin) / (ymax - ymin) * plot_h;
    };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
        << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << spec.title
        << "</text>\n";

    // Axes with 6 ticks per side.
    out << "<g stroke=\"#333\" stroke-width=\"1\" fill=\"none\">"
        << "<path d=\"M" << left << " " << top << " V" << top + plot_h << " H"
        << left + plot_w << "\"/></g>\n";
    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (int t = 0; t <= 5; ++t) {
        double fx = xmin + (xmax - xmin) * t / 5.0;
        double fy = ymin + (ymax - ymin) * t / 5.0;
        double vx = spec.log_x ? std::pow(10.0, fx) : fx;
        double vy = spec.log_y ? std::pow(10.0, fy) : fy;
        double gx = left + plot_w * t / 5.0;
        double gy = top + plot_h - plot_h * t / 5.0;
        out << "<line x1=\"" << detail::svg_num(gx) << "\" y1=\""
            << detail::svg_num(top + plot_h) << "\" x2=\"" << detail::svg_num(gx)
            << "\" y2=\"" << detail::svg_num(top + plot_h + 5)
            << "\" stroke=\"#333\"/>\n";
        char lab[32];
        std::snprintf(lab, sizeof lab, "%.4g", vx);
        out << "<text x=\"" << detail::svg_num(gx) << "\" y=\""
            << detail::svg_num(top + plot_h + 18) << "\" text-anchor=\"middle\">"
            << lab << "</text>\n";
        out << "<line x1=\"" << detail::svg_num(left - 5) << "\" y1=\""
            << detail::svg_num(gy) << "\" x2=\"" << detail::svg_num(left)
            << "\" y2=\"" << detail::svg_num(gy) << "\" stroke=\"#333\"/>\n";
        std::snprintf(lab, sizeof lab, "%.4g", vy);
        out << "<text x=\"" << detail::svg_num(left - 8) << "\" y=\""
            << detail::svg_num(gy + 4) << "\" text-anchor=\"end\">" << lab
            << "</text>\n";
    }
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-size=\"13\">" << spec.x_label
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << top + plot_h / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
        << top + plot_h / 2 << ")\">" << spec.y_label << "</text>\n";
    out << "</g>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color =
            detail::kPalette[s % (sizeof detail::kPalette / sizeof(char*))];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (auto [x, y] : series[s].points) {
            if (spec.log_x && x <= 0) continue;
            if (spec.log_y && y <= 0) continue;
            if (!std::isfinite(tx(x)) || !std::isfinite(ty(y))) continue;
            out << detail::svg_num(px(x)) << "," << detail::svg_num(py(y)) << " ";
        }
        out << "\"/>\n";
        double ly = top + 16 + 16 * static_cast<double>(s);
        out << "<line x1=\"" << left + plot_w - 130 << "\" y1=\"" << ly
            << "\" x2=\"" << left + plot_w - 105 << "\" y2=\"" << ly
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << left + plot_w - 100 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\">"
            << series[s].name << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace mdl
