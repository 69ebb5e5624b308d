#include "covertime/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace covertime {

namespace {

constexpr std::array<const char*, 8> palette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

/// Roughly five round tick values covering [lo, hi].
std::vector<double> ticks(double lo, double hi) {
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double f : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        step = f * mag;
        if (span / step <= 6.0)
            break;
    }
    std::vector<double> out;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-12 * span; t += step)
        out.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
    return out;
}

} // namespace

std::string render_line_chart(const PlotSpec& spec, const std::vector<PlotSeries>& series) {
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& s : series)
        for (auto [x, y] : s.points) {
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    if (!std::isfinite(x_lo)) {
        x_lo = 0.0;
        x_hi = y_hi = 1.0;
        y_lo = 0.0;
    }
    y_lo = std::min(y_lo, 0.0);
    if (x_hi - x_lo <= 0.0)
        x_hi = x_lo + 1.0;
    if (y_hi - y_lo <= 0.0)
        y_hi = y_lo + 1.0;
    y_hi += 0.05 * (y_hi - y_lo);

    const double left = 70, right = 170, top = 40, bottom = 55;
    const double pw = spec.width - left - right, ph = spec.height - top - bottom;
    auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * pw; };
    auto py = [&](double y) { return top + ph - (y - y_lo) / (y_hi - y_lo) * ph; };

    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n"
        "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
        spec.width, spec.height);
    svg += fmt::format("<text x=\"{:.1f}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                       left + pw / 2, escape(spec.title));

    for (double t : ticks(x_lo, x_hi)) {
        svg += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"#e0e0e0\"/>\n",
                           px(t), top, top + ph);
        svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:g}</text>\n", px(t),
                           top + ph + 16, t);
    }
    for (double t : ticks(y_lo, y_hi)) {
        svg += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"#e0e0e0\"/>\n",
                           left, py(t), left + pw);
        svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:g}</text>\n", left - 6, py(t) + 4,
                           t);
    }
    svg += fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" "
                       "stroke=\"black\"/>\n",
                       left, top, pw, ph);
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", left + pw / 2,
                       static_cast<double>(spec.height) - 14, escape(spec.x_label));
    svg += fmt::format("<text x=\"16\" y=\"{0:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {0:.1f})\">{1}"
                       "</text>\n",
                       top + ph / 2, escape(spec.y_label));

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto* color = palette[k % palette.size()];
        const auto& s = series[k];
        if (!s.points.empty()) {
            svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"", color);
            for (std::size_t i = 0; i < s.points.size(); ++i)
                svg += fmt::format("{}{:.2f},{:.2f}", i ? " " : "", px(s.points[i].first), py(s.points[i].second));
            svg += "\"/>\n";
        }
        const double ly = top + 10 + 20.0 * static_cast<double>(k);
        svg += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"{3}\" "
                           "stroke-width=\"2\"/>\n",
                           left + pw + 12, ly, left + pw + 36, color);
        svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n", left + pw + 42, ly + 4, escape(s.label));
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace covertime
