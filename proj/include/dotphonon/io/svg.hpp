// Self-contained static SVG line plots and heatmaps

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace dotphonon::io::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool line = true;
    bool markers = false;
};

struct LinePlot {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool xlog = false;
    bool ylog = false;
    std::vector<Series> series;
};

/// z is row-major over (x, y): z[i * y.size() + j] belongs to (x[i], y[j]).
struct Heatmap {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    std::string zlabel;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> z;
    bool log_color = true;
};

namespace detail {

inline std::string escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        switch (c) {
            case '&': o += "&amp;"; break;
            case '<': o += "&lt;"; break;
            case '>': o += "&gt;"; break;
            case '"': o += "&quot;"; break;
            default: o += c;
        }
    }
    return o;
}

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

inline std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline constexpr std::array<const char*, 10> palette{"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd",
                                                      "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool valid() const { return lo <= hi; }
    void pad() {
        if (!valid()) {
            lo = 0.0;
            hi = 1.0;
        } else if (lo == hi) {
            const double d = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
            lo -= d;
            hi += d;
        }
    }
};

inline std::vector<double> linear_ticks(double lo, double hi) {
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    std::vector<double> t;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step)
        t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    return t;
}

// Ticks in the transformed (log10 when `log`) coordinate.
inline std::vector<double> ticks(double lo, double hi, bool log) {
    if (!log) return linear_ticks(lo, hi);
    std::vector<double> t;
    for (double d = std::ceil(lo); d <= std::floor(hi); d += 1.0) t.push_back(d);
    if (t.size() < 2) return linear_ticks(lo, hi);
    return t;
}

inline std::string tick_label(double v, bool log) { return log ? num(std::pow(10.0, v)) : num(v); }

// Viridis-like ramp, t in [0, 1].
inline std::string ramp(double t) {
    static constexpr std::array<std::array<double, 3>, 5> anchors{
        {{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
    t = std::clamp(t, 0.0, 1.0) * 4.0;
    const auto i = std::min<std::size_t>(3, static_cast<std::size_t>(t));
    const double f = t - static_cast<double>(i);
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(std::lround(anchors[i][0] + f * (anchors[i + 1][0] - anchors[i][0]))),
                  static_cast<int>(std::lround(anchors[i][1] + f * (anchors[i + 1][1] - anchors[i][1]))),
                  static_cast<int>(std::lround(anchors[i][2] + f * (anchors[i + 1][2] - anchors[i][2]))));
    return buf;
}

} // namespace detail

inline std::string render(const LinePlot& plot) {
    using namespace detail;
    constexpr double W = 760, H = 460, L = 90, R = 200, T = 40, B = 60;
    const double pw = W - L - R, ph = H - T - B;

    auto tx = [&](double v) { return plot.xlog ? (v > 0 ? std::log10(v) : std::numeric_limits<double>::quiet_NaN()) : v; };
    auto ty = [&](double v) { return plot.ylog ? (v > 0 ? std::log10(v) : std::numeric_limits<double>::quiet_NaN()) : v; };

    Range xr, yr;
    for (const auto& s : plot.series)
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            const double a = tx(s.x[i]), b = ty(s.y[i]);
            if (std::isfinite(a) && std::isfinite(b)) {
                xr.add(a);
                yr.add(b);
            }
        }
    xr.pad();
    yr.pad();
    auto px = [&](double a) { return L + (a - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double b) { return T + ph - (b - yr.lo) / (yr.hi - yr.lo) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << coord(L + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(plot.title) << "</text>\n";
    o << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double t : ticks(xr.lo, xr.hi, plot.xlog)) {
        const double x = px(t);
        o << "<line x1=\"" << coord(x) << "\" y1=\"" << T + ph << "\" x2=\"" << coord(x) << "\" y2=\"" << T + ph + 5
          << "\" stroke=\"black\"/><text x=\"" << coord(x) << "\" y=\"" << T + ph + 18
          << "\" text-anchor=\"middle\">" << tick_label(t, plot.xlog) << "</text>\n";
    }
    for (double t : ticks(yr.lo, yr.hi, plot.ylog)) {
        const double y = py(t);
        o << "<line x1=\"" << L - 5 << "\" y1=\"" << coord(y) << "\" x2=\"" << L << "\" y2=\"" << coord(y)
          << "\" stroke=\"black\"/><text x=\"" << L - 8 << "\" y=\"" << coord(y + 4)
          << "\" text-anchor=\"end\">" << tick_label(t, plot.ylog) << "</text>\n";
    }
    o << "<text x=\"" << coord(L + pw / 2) << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">"
      << escape(plot.xlabel) << "</text>\n";
    o << "<text transform=\"translate(20," << coord(T + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(plot.ylabel) << "</text>\n";

    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const auto& s = plot.series[k];
        const char* color = palette[k % palette.size()];
        if (s.line) {
            std::string path;
            bool pen_down = false;
            for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
                const double a = tx(s.x[i]), b = ty(s.y[i]);
                if (!std::isfinite(a) || !std::isfinite(b)) {
                    pen_down = false;
                    continue;
                }
                path += (pen_down ? " L" : " M") + coord(px(a)) + ' ' + coord(py(b));
                pen_down = true;
            }
            if (!path.empty())
                o << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\"/>\n";
        }
        if (s.markers)
            for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
                const double a = tx(s.x[i]), b = ty(s.y[i]);
                if (std::isfinite(a) && std::isfinite(b))
                    o << "<circle cx=\"" << coord(px(a)) << "\" cy=\"" << coord(py(b)) << "\" r=\"3.5\" fill=\""
                      << color << "\"/>\n";
            }
        const double ly = T + 10 + 18.0 * static_cast<double>(k);
        o << "<line x1=\"" << L + pw + 15 << "\" y1=\"" << coord(ly) << "\" x2=\"" << L + pw + 40 << "\" y2=\""
          << coord(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/><text x=\"" << L + pw + 46
          << "\" y=\"" << coord(ly + 4) << "\">" << escape(s.label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

/// Panels laid out side by side, each with its own colorbar. Non-finite cells:
/// +inf takes the top color, anything else (errors) is drawn light gray.
inline std::string render(std::span<const Heatmap> panels) {
    using namespace detail;
    constexpr double PW = 300, PH = 300, L = 70, GAP = 130, T = 45, B = 60;
    const double W = L + static_cast<double>(panels.size()) * (PW + GAP);
    const double H = T + PH + B;

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t k = 0; k < panels.size(); ++k) {
        const Heatmap& hm = panels[k];
        const double x0 = L + static_cast<double>(k) * (PW + GAP);
        const std::size_t nx = hm.x.size(), ny = hm.y.size();
        auto tz = [&](double v) { return hm.log_color ? (v > 0 ? std::log10(v) : std::numeric_limits<double>::quiet_NaN()) : v; };

        Range zr;
        for (double v : hm.z)
            if (double t = tz(v); std::isfinite(t)) zr.add(t);
        zr.pad();

        o << "<text x=\"" << coord(x0 + PW / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
          << escape(hm.title) << "</text>\n";
        const double cw = PW / static_cast<double>(std::max<std::size_t>(nx, 1));
        const double ch = PH / static_cast<double>(std::max<std::size_t>(ny, 1));
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = 0; j < ny; ++j) {
                const double v = hm.z[i * ny + j];
                std::string fill;
                if (std::isinf(v) && v > 0) fill = ramp(1.0);
                else if (double t = tz(v); std::isfinite(t)) fill = ramp((t - zr.lo) / (zr.hi - zr.lo));
                else fill = "#dddddd";
                o << "<rect class=\"cell\" x=\"" << coord(x0 + cw * static_cast<double>(i)) << "\" y=\""
                  << coord(T + PH - ch * static_cast<double>(j + 1)) << "\" width=\"" << coord(cw + 0.3)
                  << "\" height=\"" << coord(ch + 0.3) << "\" fill=\"" << fill << "\"/>\n";
            }
        o << "<rect x=\"" << x0 << "\" y=\"" << T << "\" width=\"" << PW << "\" height=\"" << PH
          << "\" fill=\"none\" stroke=\"black\"/>\n";

        // Axis ticks at five evenly spaced grid indices.
        for (int q = 0; q <= 4; ++q) {
            if (nx > 0) {
                const std::size_t i = (nx - 1) * static_cast<std::size_t>(q) / 4;
                const double x = x0 + cw * (static_cast<double>(i) + 0.5);
                o << "<text x=\"" << coord(x) << "\" y=\"" << T + PH + 16 << "\" text-anchor=\"middle\">"
                  << num(hm.x[i]) << "</text>\n";
            }
            if (ny > 0) {
                const std::size_t j = (ny - 1) * static_cast<std::size_t>(q) / 4;
                const double y = T + PH - ch * (static_cast<double>(j) + 0.5);
                o << "<text x=\"" << x0 - 5 << "\" y=\"" << coord(y + 4) << "\" text-anchor=\"end\">"
                  << num(hm.y[j]) << "</text>\n";
            }
        }
        o << "<text x=\"" << coord(x0 + PW / 2) << "\" y=\"" << T + PH + 36 << "\" text-anchor=\"middle\">"
          << escape(hm.xlabel) << "</text>\n";
        o << "<text transform=\"translate(" << coord(x0 - 48) << "," << coord(T + PH / 2)
          << ") rotate(-90)\" text-anchor=\"middle\">" << escape(hm.ylabel) << "</text>\n";

        // Colorbar.
        const double bx = x0 + PW + 15;
        constexpr int steps = 32;
        for (int s = 0; s < steps; ++s) {
            const double f = (s + 0.5) / steps;
            o << "<rect x=\"" << coord(bx) << "\" y=\"" << coord(T + PH - PH * (s + 1) / steps) << "\" width=\"14\" height=\""
              << coord(PH / steps + 0.3) << "\" fill=\"" << ramp(f) << "\"/>\n";
        }
        for (double t : ticks(zr.lo, zr.hi, hm.log_color)) {
            const double y = T + PH - (t - zr.lo) / (zr.hi - zr.lo) * PH;
            o << "<text x=\"" << coord(bx + 18) << "\" y=\"" << coord(y + 4) << "\">" << tick_label(t, hm.log_color)
              << "</text>\n";
        }
        o << "<text x=\"" << coord(bx) << "\" y=\"" << T - 6 << "\">" << escape(hm.zlabel) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

inline std::string render(const Heatmap& hm) { return render(std::span<const Heatmap>(&hm, 1)); }

} // namespace dotphonon::io::svg
