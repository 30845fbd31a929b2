#include "dritz/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <stdexcept>

namespace dritz {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 55.0;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void append(std::string& s, const char* format, ...)
    __attribute__((format(printf, 2, 3)));

void append(std::string& s, const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    s += buf;
}

struct Axis {
    double lo, hi; // data range
    double px_lo, px_hi;

    double to_px(double v) const {
        const double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
        return px_lo + t * (px_hi - px_lo);
    }
};

std::string header(const std::string& title, const std::string& x_label,
                   const std::string& y_label) {
    std::string s;
    append(s,
           "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" "
           "height=\"%g\" viewBox=\"0 0 %g %g\">\n",
           kWidth, kHeight, kWidth, kHeight);
    append(s, "<rect width=\"%g\" height=\"%g\" fill=\"white\"/>\n", kWidth,
           kHeight);
    append(s,
           "<text x=\"%g\" y=\"22\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">%s</text>\n",
           kWidth / 2.0, title.c_str());
    append(s,
           "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"12\">%s</text>\n",
           kWidth / 2.0, kHeight - 12.0, x_label.c_str());
    append(s,
           "<text x=\"16\" y=\"%g\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 %g)\">%s</text>\n",
           kHeight / 2.0, kHeight / 2.0, y_label.c_str());
    return s;
}

void draw_frame(std::string& s, const Axis& x, const Axis& y) {
    append(s,
           "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" "
           "stroke=\"black\"/>\n",
           x.px_lo, y.px_hi, x.px_hi - x.px_lo, y.px_lo - y.px_hi);
}

void x_tick(std::string& s, const Axis& x, const Axis& y, double v,
            const std::string& label) {
    const double px = x.to_px(v);
    append(s, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n",
           px, y.px_lo, px, y.px_lo + 5.0);
    append(s,
           "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"11\">%s</text>\n",
           px, y.px_lo + 18.0, label.c_str());
}

void y_tick(std::string& s, const Axis& x, const Axis& y, double v,
            const std::string& label) {
    const double py = y.to_px(v);
    append(s, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n",
           x.px_lo - 5.0, py, x.px_lo, py);
    append(s,
           "<text x=\"%g\" y=\"%g\" text-anchor=\"end\" "
           "font-family=\"sans-serif\" font-size=\"11\">%s</text>\n",
           x.px_lo - 8.0, py + 4.0, label.c_str());
}

} // namespace

std::string error_bar_chart_svg(const std::string& title,
                                const std::string& x_label,
                                const std::string& y_label,
                                const std::vector<ErrorBarSeries>& series) {
    bool any = false;
    double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
    for (const auto& s : series)
        for (const auto& p : s.points) {
            if (p.x <= 0.0)
                throw std::invalid_argument("error_bar_chart_svg: x must be > 0");
            const double lx = std::log10(p.x);
            if (!any) {
                x_lo = x_hi = lx;
                y_lo = p.mean - p.std;
                y_hi = p.mean + p.std;
                any = true;
            } else {
                x_lo = std::min(x_lo, lx);
                x_hi = std::max(x_hi, lx);
                y_lo = std::min(y_lo, p.mean - p.std);
                y_hi = std::max(y_hi, p.mean + p.std);
            }
        }
    if (!any) throw std::invalid_argument("error_bar_chart_svg: empty series");
    if (y_hi == y_lo) { y_hi += 1.0; y_lo -= 1.0; }
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;
    const Axis ax{x_lo - 0.2, x_hi + 0.2, kMarginLeft, kWidth - kMarginRight};
    const Axis ay{y_lo, y_hi, kHeight - kMarginBottom, kMarginTop};

    std::string out = header(title, x_label, y_label);
    draw_frame(out, ax, ay);
    for (int e = static_cast<int>(std::ceil(ax.lo)); e <= ax.hi; ++e)
        x_tick(out, ax, ay, e, "1e" + std::to_string(e));
    for (int k = 0; k <= 4; ++k) {
        const double v = y_lo + k * (y_hi - y_lo) / 4.0;
        y_tick(out, ax, ay, v, fmt(v));
    }
    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = kColors[si % 6];
        for (const auto& p : series[si].points) {
            const double px = ax.to_px(std::log10(p.x));
            const double y_mid = ay.to_px(p.mean);
            const double y_top = ay.to_px(p.mean + p.std);
            const double y_bot = ay.to_px(p.mean - p.std);
            append(out,
                   "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" "
                   "stroke=\"%s\"/>\n",
                   px, y_bot, px, y_top, color);
            append(out,
                   "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" "
                   "stroke=\"%s\"/>\n",
                   px - 4.0, y_top, px + 4.0, y_top, color);
            append(out,
                   "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" "
                   "stroke=\"%s\"/>\n",
                   px - 4.0, y_bot, px + 4.0, y_bot, color);
            append(out, "<circle cx=\"%g\" cy=\"%g\" r=\"3\" fill=\"%s\"/>\n",
                   px, y_mid, color);
        }
        append(out,
               "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" "
               "font-size=\"12\" fill=\"%s\">%s</text>\n",
               kMarginLeft + 10.0, kMarginTop + 16.0 + 16.0 * si, color,
               series[si].name.c_str());
    }
    out += "</svg>\n";
    return out;
}

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<LinePoint>& points) {
    if (points.empty())
        throw std::invalid_argument("line_chart_svg: empty series");
    double x_lo = points.front().x, x_hi = points.front().x;
    double y_lo = 0.0, y_hi = 0.0;
    bool first = true;
    for (const auto& p : points) {
        x_lo = std::min(x_lo, p.x);
        x_hi = std::max(x_hi, p.x);
        const double ly = std::log10(std::max(std::abs(p.y), 1e-16));
        if (first) { y_lo = y_hi = ly; first = false; }
        y_lo = std::min(y_lo, ly);
        y_hi = std::max(y_hi, ly);
    }
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    if (y_hi == y_lo) { y_hi += 1.0; y_lo -= 1.0; }
    const Axis ax{x_lo, x_hi, kMarginLeft, kWidth - kMarginRight};
    const Axis ay{y_lo, y_hi, kHeight - kMarginBottom, kMarginTop};

    std::string out = header(title, x_label, y_label);
    draw_frame(out, ax, ay);
    for (int k = 0; k <= 4; ++k) {
        const double v = x_lo + k * (x_hi - x_lo) / 4.0;
        x_tick(out, ax, ay, v, fmt(v));
    }
    for (int e = static_cast<int>(std::ceil(y_lo)); e <= y_hi; ++e)
        y_tick(out, ax, ay, e, "1e" + std::to_string(e));
    std::string path = "M";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double px = ax.to_px(points[i].x);
        const double py =
            ay.to_px(std::log10(std::max(std::abs(points[i].y), 1e-16)));
        if (i > 0) path += " L";
        path += fmt(px) + " " + fmt(py);
    }
    append(out, "<path d=\"%s\" fill=\"none\" stroke=\"%s\"/>\n", path.c_str(),
           kColors[0]);
    out += "</svg>\n";
    return out;
}

} // namespace dritz
