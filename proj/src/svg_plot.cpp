#include "nplab/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace nplab::io {

namespace {

constexpr double kPlotW = 640.0;
constexpr double kPlotH = 330.0;
constexpr double kMarginL = 80.0;
constexpr double kMarginR = 170.0;
constexpr double kMarginT = 40.0;
constexpr double kMarginB = 55.0;
constexpr double kPanelW = kMarginL + kPlotW + kMarginR;
constexpr double kPanelH = kMarginT + kPlotH + kMarginB;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
                          "#bcbd22", "#e377c2"};
constexpr int kPaletteSize = 10;

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
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

double nice_step(double range, int target) {
    const double raw = range / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    double step;
    if (norm < 1.5)
        step = 1.0;
    else if (norm < 3.5)
        step = 2.0;
    else if (norm < 7.5)
        step = 5.0;
    else
        step = 10.0;
    return step * mag;
}

struct AxisRange {
    double lo = 0.0;
    double hi = 1.0;
};

// Data extent padded by 5%; degenerate ranges are widened so a constant
// series still renders.
AxisRange padded_range(double lo, double hi) {
    if (!(hi > lo)) {
        const double pad = std::max(std::abs(lo), 1.0) * 0.1;
        return {lo - pad, hi + pad};
    }
    const double pad = (hi - lo) * 0.05;
    return {lo - pad, hi + pad};
}

void render_panel(std::string& svg, const PlotPanel& panel, double y_offset) {
    // Collect extent. In log mode non-positive y values are skipped.
    double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
    bool any = false;
    for (const PlotSeries& s : panel.series) {
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (panel.log_y && y <= 0.0) continue;
            const double yv = panel.log_y ? std::log10(y) : y;
            if (!any) {
                x_lo = x_hi = x;
                y_lo = y_hi = yv;
                any = true;
            } else {
                x_lo = std::min(x_lo, x);
                x_hi = std::max(x_hi, x);
                y_lo = std::min(y_lo, yv);
                y_hi = std::max(y_hi, yv);
            }
        }
    }
    if (!any) {
        x_lo = y_lo = 0.0;
        x_hi = y_hi = 1.0;
    }
    const AxisRange xr = padded_range(x_lo, x_hi);
    const AxisRange yr = padded_range(y_lo, y_hi);

    const double px0 = kMarginL;
    const double py0 = y_offset + kMarginT;
    auto map_x = [&](double x) {
        return px0 + (x - xr.lo) / (xr.hi - xr.lo) * kPlotW;
    };
    auto map_y = [&](double yv) {
        return py0 + (1.0 - (yv - yr.lo) / (yr.hi - yr.lo)) * kPlotH;
    };

    // Ticks.
    std::vector<double> x_ticks, y_ticks;
    {
        const double step = nice_step(xr.hi - xr.lo, 6);
        for (double v = std::ceil(xr.lo / step) * step; v <= xr.hi + step * 1e-9;
             v += step)
            x_ticks.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
    }
    if (panel.log_y) {
        for (double e = std::ceil(yr.lo); e <= std::floor(yr.hi) + 1e-9; e += 1.0)
            y_ticks.push_back(e);
    } else {
        const double step = nice_step(yr.hi - yr.lo, 6);
        for (double v = std::ceil(yr.lo / step) * step; v <= yr.hi + step * 1e-9;
             v += step)
            y_ticks.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
    }

    // Frame and grid.
    svg += "<g font-family=\"monospace\" font-size=\"12\">\n";
    svg += "<rect x=\"" + coord(px0) + "\" y=\"" + coord(py0) + "\" width=\"" +
           coord(kPlotW) + "\" height=\"" + coord(kPlotH) +
           "\" fill=\"white\" stroke=\"black\"/>\n";
    for (double v : x_ticks) {
        const double sx = map_x(v);
        svg += "<line x1=\"" + coord(sx) + "\" y1=\"" + coord(py0) + "\" x2=\"" +
               coord(sx) + "\" y2=\"" + coord(py0 + kPlotH) +
               "\" stroke=\"#dddddd\"/>\n";
        svg += "<text x=\"" + coord(sx) + "\" y=\"" + coord(py0 + kPlotH + 18) +
               "\" text-anchor=\"middle\">" + tick_label(v) + "</text>\n";
    }
    for (double v : y_ticks) {
        const double sy = map_y(v);
        const double label_value = panel.log_y ? std::pow(10.0, v) : v;
        svg += "<line x1=\"" + coord(px0) + "\" y1=\"" + coord(sy) + "\" x2=\"" +
               coord(px0 + kPlotW) + "\" y2=\"" + coord(sy) +
               "\" stroke=\"#dddddd\"/>\n";
        svg += "<text x=\"" + coord(px0 - 8) + "\" y=\"" + coord(sy + 4) +
               "\" text-anchor=\"end\">" + tick_label(label_value) + "</text>\n";
    }

    // Axis labels and title.
    svg += "<text x=\"" + coord(px0 + kPlotW / 2) + "\" y=\"" +
           coord(py0 - 14) + "\" text-anchor=\"middle\" font-size=\"14\">" +
           xml_escape(panel.title) + "</text>\n";
    svg += "<text x=\"" + coord(px0 + kPlotW / 2) + "\" y=\"" +
           coord(py0 + kPlotH + 40) + "\" text-anchor=\"middle\">" +
           xml_escape(panel.x_label) + "</text>\n";
    svg += "<text x=\"" + coord(px0 - 60) + "\" y=\"" +
           coord(py0 + kPlotH / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 " +
           coord(px0 - 60) + " " + coord(py0 + kPlotH / 2) + ")\">" +
           xml_escape(panel.y_label) + "</text>\n";

    // Series.
    for (std::size_t si = 0; si < panel.series.size(); ++si) {
        const PlotSeries& s = panel.series[si];
        const int slot = s.color >= 0 ? s.color : static_cast<int>(si);
        const char* color = kPalette[slot % kPaletteSize];
        if (s.markers) {
            for (const auto& [x, y] : s.points) {
                if (!std::isfinite(x) || !std::isfinite(y)) continue;
                if (panel.log_y && y <= 0.0) continue;
                const double yv = panel.log_y ? std::log10(y) : y;
                svg += "<circle cx=\"" + coord(map_x(x)) + "\" cy=\"" +
                       coord(map_y(yv)) + "\" r=\"2.5\" fill=\"none\" stroke=\"" +
                       color + "\"/>\n";
            }
        } else {
            std::string pts;
            bool open = false;
            auto flush = [&]() {
                if (open && !pts.empty())
                    svg += "<polyline points=\"" + pts +
                           "\" fill=\"none\" stroke=\"" + color +
                           "\" stroke-width=\"1.5\"/>\n";
                pts.clear();
                open = false;
            };
            for (const auto& [x, y] : s.points) {
                if (!std::isfinite(x) || !std::isfinite(y) ||
                    (panel.log_y && y <= 0.0)) {
                    flush();
                    continue;
                }
                const double yv = panel.log_y ? std::log10(y) : y;
                if (!pts.empty()) pts += ' ';
                pts += coord(map_x(x)) + "," + coord(map_y(yv));
                open = true;
            }
            flush();
        }
        // Legend entry.
        const double ly = py0 + 10 + 18.0 * static_cast<double>(si);
        const double lx = px0 + kPlotW + 16;
        if (s.markers) {
            svg += "<circle cx=\"" + coord(lx + 12) + "\" cy=\"" +
                   coord(ly - 4) + "\" r=\"2.5\" fill=\"none\" stroke=\"" +
                   color + "\"/>\n";
        } else {
            svg += "<line x1=\"" + coord(lx) + "\" y1=\"" + coord(ly - 4) +
                   "\" x2=\"" + coord(lx + 24) + "\" y2=\"" + coord(ly - 4) +
                   "\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
        }
        svg += "<text x=\"" + coord(lx + 30) + "\" y=\"" + coord(ly) + "\">" +
               xml_escape(s.label) + "</text>\n";
    }
    svg += "</g>\n";
}

}  // namespace

std::string render_svg(const std::vector<PlotPanel>& panels) {
    if (panels.empty())
        throw std::invalid_argument("render_svg: no panels");
    const double total_h = kPanelH * static_cast<double>(panels.size());
    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           coord(kPanelW) + "\" height=\"" + coord(total_h) +
           "\" viewBox=\"0 0 " + coord(kPanelW) + " " + coord(total_h) +
           "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + coord(kPanelW) + "\" height=\"" +
           coord(total_h) + "\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i)
        render_panel(svg, panels[i], kPanelH * static_cast<double>(i));
    svg += "</svg>\n";
    return svg;
}

void write_svg(const std::vector<PlotPanel>& panels, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << render_svg(panels);
    if (!f) throw std::runtime_error("write failed: " + path);
}

void emit_plot(
    const std::vector<std::pair<std::string, const Trajectory*>>& trajs,
    int figure_style, const std::string& path) {
    if (trajs.empty()) throw std::invalid_argument("emit_plot: no trajectories");

    PlotPanel panel;
    panel.title = "figure " + std::to_string(figure_style) +
                  ": generalization error";
    panel.x_label = "t";
    panel.y_label = "eps_g";
    // Long-horizon figures span several decades; use a log axis there.
    panel.log_y = figure_style >= 6;
    for (const auto& [label, traj] : trajs) {
        PlotSeries s;
        s.label = label;
        s.markers = traj->meta.source == "simulate";
        for (const TrajectoryPoint& pt : traj->points)
            s.points.emplace_back(pt.t, pt.eps_g);
        panel.series.push_back(std::move(s));
    }
    write_svg({panel}, path);
}

}  // namespace nplab::io
