#include "schmidt/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace schmidt::svg {

namespace {

constexpr double panel_width = 480.0;
constexpr double panel_height = 360.0;
constexpr double margin_left = 64.0;
constexpr double margin_right = 16.0;
constexpr double margin_top = 32.0;
constexpr double margin_bottom = 48.0;

const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
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

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void widen() {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        } else if (hi == lo) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

void render_panel(std::ostringstream& out, const Panel& panel, double offset_x) {
    Range xr;
    Range yr;
    auto transform_y = [&](double y) { return panel.log_y ? std::log10(y) : y; };
    for (const auto& s : panel.series) {
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y) || (panel.log_y && y <= 0.0)) continue;
            xr.include(x);
            yr.include(transform_y(y));
        }
    }
    xr.widen();
    yr.widen();

    const double plot_w = panel_width - margin_left - margin_right;
    const double plot_h = panel_height - margin_top - margin_bottom;
    const double x0 = offset_x + margin_left;
    const double y0 = margin_top;
    auto px = [&](double x) { return x0 + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    auto py = [&](double ty) { return y0 + plot_h - (ty - yr.lo) / (yr.hi - yr.lo) * plot_h; };

    out << "<g>\n";
    out << "<text x=\"" << num(x0 + plot_w / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
        << escape(panel.title) << "</text>\n";
    out << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(plot_w) << "\" height=\""
        << num(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int t = 0; t <= 4; ++t) {
        const double fx = xr.lo + (xr.hi - xr.lo) * t / 4.0;
        const double fy = yr.lo + (yr.hi - yr.lo) * t / 4.0;
        out << "<text x=\"" << num(px(fx)) << "\" y=\"" << num(y0 + plot_h + 16)
            << "\" text-anchor=\"middle\" font-size=\"11\">" << tick_label(fx) << "</text>\n";
        out << "<text x=\"" << num(x0 - 6) << "\" y=\"" << num(py(fy) + 4)
            << "\" text-anchor=\"end\" font-size=\"11\">" << tick_label(panel.log_y ? std::pow(10.0, fy) : fy)
            << "</text>\n";
    }
    out << "<text x=\"" << num(x0 + plot_w / 2) << "\" y=\"" << num(panel_height - 10)
        << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(panel.x_label) << "</text>\n";
    out << "<text x=\"" << num(offset_x + 14) << "\" y=\"" << num(y0 + plot_h / 2)
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 " << num(offset_x + 14) << ' '
        << num(y0 + plot_h / 2) << ")\">" << escape(panel.y_label) << "</text>\n";

    std::size_t colour = 0;
    for (const auto& s : panel.series) {
        const char* stroke = palette[colour++ % std::size(palette)];
        if (s.markers) {
            for (const auto& [x, y] : s.points) {
                if (!std::isfinite(x) || !std::isfinite(y) || (panel.log_y && y <= 0.0)) continue;
                out << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(transform_y(y)))
                    << "\" r=\"2.5\" fill=\"none\" stroke=\"" << stroke << "\"/>\n";
            }
        } else {
            out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
            bool first = true;
            for (const auto& [x, y] : s.points) {
                if (!std::isfinite(x) || !std::isfinite(y) || (panel.log_y && y <= 0.0)) continue;
                if (!first) out << ' ';
                out << num(px(x)) << ',' << num(py(transform_y(y)));
                first = false;
            }
            out << "\"/>\n";
        }
        if (!s.label.empty()) {
            const double ly = y0 + 14.0 * static_cast<double>(colour);
            out << "<text x=\"" << num(x0 + plot_w - 8) << "\" y=\"" << num(ly)
                << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << stroke << "\">" << escape(s.label)
                << "</text>\n";
        }
    }
    out << "</g>\n";
}

}  // namespace

std::string render(const std::vector<Panel>& panels) {
    std::ostringstream out;
    const double width = panel_width * static_cast<double>(std::max<std::size_t>(1, panels.size()));
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(panel_height)
        << "\" viewBox=\"0 0 " << num(width) << ' ' << num(panel_height) << "\" font-family=\"sans-serif\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        render_panel(out, panels[i], panel_width * static_cast<double>(i));
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace schmidt::svg
