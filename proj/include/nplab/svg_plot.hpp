#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nplab/trajectory.hpp"

namespace nplab::io {

// One curve: either a polyline (default) or discrete markers. color picks
// a palette slot; -1 assigns by series order.
struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
    bool markers = false;
    int color = -1;
};

struct PlotPanel {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    std::vector<PlotSeries> series;
};

// Self-contained SVG document, panels stacked vertically. Output is a
// pure function of the input (fixed layout, palette and number
// formatting), so identical calls produce identical bytes.
std::string render_svg(const std::vector<PlotPanel>& panels);

void write_svg(const std::vector<PlotPanel>& panels, const std::string& path);

// Generalization-error-versus-time plot for a set of labeled
// trajectories, styled per figure id (log-scale vertical axis for the
// long-horizon figures). Throws std::invalid_argument on an empty list.
void emit_plot(
    const std::vector<std::pair<std::string, const Trajectory*>>& trajs,
    int figure_style, const std::string& path);

}  // namespace nplab::io
