#include "nplab/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace nplab::io {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

namespace {

constexpr const char* kHeader = "t,eps_g,eps_g_stderr,Q,R,Q_kl,R_kl";

void append_cell(std::string& out, double v) {
    if (!std::isnan(v)) out += format_number(v);
}

double parse_cell(const std::string& cell, int line_no) {
    if (cell.empty()) return std::numeric_limits<double>::quiet_NaN();
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + cell.size())
        throw std::runtime_error("trajectory csv: bad number '" + cell +
                                 "' on line " + std::to_string(line_no));
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}

}  // namespace

std::string emit_trajectory_csv(const Trajectory& traj) {
    std::string out = kHeader;
    out += '\n';
    for (std::size_t i = 0; i < traj.points.size(); ++i) {
        const TrajectoryPoint& pt = traj.points[i];
        const double se = i < traj.stderr_points.size()
                              ? traj.stderr_points[i].eps_g
                              : std::numeric_limits<double>::quiet_NaN();
        append_cell(out, pt.t);
        out += ',';
        append_cell(out, pt.eps_g);
        out += ',';
        append_cell(out, se);
        out += ',';
        append_cell(out, pt.q);
        out += ',';
        append_cell(out, pt.r);
        out += ',';
        append_cell(out, pt.q_kl);
        out += ',';
        append_cell(out, pt.r_kl);
        out += '\n';
    }
    return out;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << emit_trajectory_csv(traj);
    if (!f) throw std::runtime_error("write failed: " + path);
}

Trajectory parse_trajectory_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("trajectory csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader)
        throw std::runtime_error("trajectory csv: unexpected header '" + line +
                                 "'");
    Trajectory traj;
    bool any_stderr = false;
    std::vector<double> stderr_cells;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != 7)
            throw std::runtime_error("trajectory csv: expected 7 cells on line " +
                                     std::to_string(line_no) + ", got " +
                                     std::to_string(cells.size()));
        TrajectoryPoint pt;
        pt.t = parse_cell(cells[0], line_no);
        pt.eps_g = parse_cell(cells[1], line_no);
        const double se = parse_cell(cells[2], line_no);
        pt.q = parse_cell(cells[3], line_no);
        pt.r = parse_cell(cells[4], line_no);
        pt.q_kl = parse_cell(cells[5], line_no);
        pt.r_kl = parse_cell(cells[6], line_no);
        if (std::isnan(pt.t))
            throw std::runtime_error("trajectory csv: missing t on line " +
                                     std::to_string(line_no));
        traj.points.push_back(pt);
        stderr_cells.push_back(se);
        if (!std::isnan(se)) any_stderr = true;
    }
    if (any_stderr) {
        traj.stderr_points.resize(traj.points.size());
        for (std::size_t i = 0; i < traj.points.size(); ++i) {
            traj.stderr_points[i].t = traj.points[i].t;
            traj.stderr_points[i].eps_g = stderr_cells[i];
        }
    }
    return traj;
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    return parse_trajectory_csv(f);
}

}  // namespace nplab::io
