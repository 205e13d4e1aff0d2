// Static SVG line plots. Everything is derived from the numbers handed in (which
// come straight from the CSVs), with fixed geometry and no timestamps, so plots are
// reproducible byte-for-byte.
#ifndef FZK_SVG_HPP
#define FZK_SVG_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "fzk/csv.hpp"

namespace fzk {

struct PlotSeries {
    std::string label;
    std::vector<std::array<double, 2>> points;
};

struct PlotSpec {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool logx = false;
    bool logy = false;
};

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

inline const char* plot_color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    return palette[i % 8];
}

}  // namespace detail

inline void write_svg_plot(const std::string& path, const PlotSpec& spec,
                           const std::vector<PlotSeries>& series) {
    const double W = 640, H = 440;
    const double ml = 70, mr = 20, mt = 34, mb = 50;

    auto tx = [&](double x) { return spec.logx ? std::log10(x) : x; };
    auto ty = [&](double y) { return spec.logy ? std::log10(y) : y; };

    // data ranges over plottable points (log axes skip nonpositive values)
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    bool seen = false;
    for (const auto& s : series)
        for (const auto& p : s.points) {
            if ((spec.logx && p[0] <= 0.0) || (spec.logy && p[1] <= 0.0)) continue;
            if (!std::isfinite(p[0]) || !std::isfinite(p[1])) continue;
            double u = tx(p[0]), v = ty(p[1]);
            if (!seen) {
                x0 = x1 = u;
                y0 = y1 = v;
                seen = true;
            }
            x0 = std::min(x0, u);
            x1 = std::max(x1, u);
            y0 = std::min(y0, v);
            y1 = std::max(y1, v);
        }
    if (!seen) {
        x0 = y0 = 0;
        x1 = y1 = 1;
    }
    if (x1 - x0 < 1e-12) {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if (y1 - y0 < 1e-12) {
        y0 -= 0.5;
        y1 += 0.5;
    }

    auto px = [&](double x) { return ml + (tx(x) - x0) / (x1 - x0) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (ty(y) - y0) / (y1 - y0) * (H - mt - mb); };

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
        << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
        << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
        << spec.title << "</text>\n";

    // axes box
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr
        << "\" height=\"" << H - mt - mb
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // five ticks per axis, placed in transformed coordinates
    for (int i = 0; i <= 4; ++i) {
        double fu = x0 + (x1 - x0) * i / 4.0;
        double fx = ml + (W - ml - mr) * i / 4.0;
        double label = spec.logx ? std::pow(10.0, fu) : fu;
        out << "<line x1=\"" << detail::svg_num(fx) << "\" y1=\"" << H - mb << "\" x2=\""
            << detail::svg_num(fx) << "\" y2=\"" << H - mb + 5
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << detail::svg_num(fx) << "\" y=\"" << H - mb + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">" << detail::tick_label(label)
            << "</text>\n";

        double fv = y0 + (y1 - y0) * i / 4.0;
        double fy = H - mb - (H - mt - mb) * i / 4.0;
        double ylab = spec.logy ? std::pow(10.0, fv) : fv;
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << detail::svg_num(fy) << "\" x2=\"" << ml
            << "\" y2=\"" << detail::svg_num(fy)
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << ml - 8 << "\" y=\"" << detail::svg_num(fy + 4)
            << "\" text-anchor=\"end\" font-size=\"11\">" << detail::tick_label(ylab)
            << "</text>\n";
    }
    out << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
        << "\" text-anchor=\"middle\" font-size=\"12\">" << spec.xlabel << "</text>\n"
        << "<text x=\"16\" y=\"" << H / 2 << "\" text-anchor=\"middle\" font-size=\"12\""
        << " transform=\"rotate(-90 16 " << H / 2 << ")\">" << spec.ylabel << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = detail::plot_color(si);
        std::string pts;
        for (const auto& p : series[si].points) {
            if ((spec.logx && p[0] <= 0.0) || (spec.logy && p[1] <= 0.0)) continue;
            if (!std::isfinite(p[0]) || !std::isfinite(p[1])) continue;
            pts += detail::svg_num(px(p[0])) + "," + detail::svg_num(py(p[1])) + " ";
            out << "<circle cx=\"" << detail::svg_num(px(p[0])) << "\" cy=\""
                << detail::svg_num(py(p[1])) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        }
        if (!pts.empty())
            out << "<polyline points=\"" << pts
                << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
        out << "<text x=\"" << W - mr - 8 << "\" y=\"" << mt + 16 + 16 * si
            << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << color << "\">"
            << series[si].label << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw IoError("short write to " + path);
}

}  // namespace fzk

#endif
