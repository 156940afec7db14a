#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nplab/csv.hpp"
#include "nplab/rng.hpp"
#include "nplab/scenario_file.hpp"
#include "nplab/svg_plot.hpp"

using namespace nplab;

TEST_SUITE_BEGIN("io");

TEST_CASE("scenario defaults") {
    std::istringstream empty("");
    const ScenarioConfig sc = io::parse_scenario(empty);
    CHECK(sc.model.n_inputs == 1000);
    CHECK(sc.model.n_outputs == 1);
    CHECK(sc.model.eta == 0.1);
    CHECK(sc.model.sigma_xi_sq == 0.01);
    CHECK(sc.model.sigma_zeta_sq == 0.01);
    CHECK(sc.model.rule == Rule::dnp);
    CHECK(sc.mode == Mode::simulate);
    CHECK(sc.seed == 12345);
    CHECK(sc.replications == 20);
    CHECK(sc.t_max == 10.0);
    CHECK(sc.record_interval == 0.25);
    CHECK(sc.q0 == 1.0);
    CHECK(sc.r0 == 0.0);
}

TEST_CASE("scenario parsing with comments and overrides") {
    std::istringstream in(
        "# fig-2 style run\n"
        "mode = theory_closed\n"
        "rule = snp\n"
        "N = 500\n"
        "M = 3\n"
        "eta = 0.05   # inline comment\n"
        "sigma_xi_sq = 0.02\n"
        "seed = 99\n"
        "replications = 7\n"
        "t_max = 4\n"
        "record_interval = 0.5\n"
        "q_kl0 = 0.1\n"
        "t_kl = 0.2\n");
    const ScenarioConfig sc = io::parse_scenario(in);
    CHECK(sc.mode == Mode::theory_closed);
    CHECK(sc.model.rule == Rule::snp);
    CHECK(sc.model.n_inputs == 500);
    CHECK(sc.model.n_outputs == 3);
    CHECK(sc.model.eta == 0.05);
    CHECK(sc.model.sigma_xi_sq == 0.02);
    CHECK(sc.seed == 99);
    CHECK(sc.replications == 7);
    CHECK(sc.t_max == 4.0);
    CHECK(sc.record_interval == 0.5);
    CHECK(sc.q_kl0 == 0.1);
    CHECK(sc.t_kl == 0.2);
}

TEST_CASE("unknown scenario keys fail loudly with line and key") {
    std::istringstream in("N = 100\nreccord_interval = 0.5\n");
    try {
        io::parse_scenario(in);
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("reccord_interval") != std::string::npos);
    }
}

TEST_CASE("malformed scenario values name the line and key") {
    std::istringstream in("eta = fast\n");
    try {
        io::parse_scenario(in);
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 1") != std::string::npos);
        CHECK(msg.find("eta") != std::string::npos);
    }
}

TEST_CASE("trajectory csv emit format") {
    Trajectory traj;
    TrajectoryPoint pt;
    pt.t = 0.25;
    pt.eps_g = 0.123456789123;
    pt.q = 1.0;
    pt.r = 0.5;
    traj.points.push_back(pt);  // q_kl, r_kl stay NaN
    const std::string csv = io::emit_trajectory_csv(traj);
    CHECK(csv == "t,eps_g,eps_g_stderr,Q,R,Q_kl,R_kl\n"
                 "0.25,0.123456789,,1,0.5,,\n");
}

TEST_CASE("trajectory csv round-trips to nine significant digits") {
    GaussianSampler rng(2024);
    Trajectory traj;
    traj.meta.replications = 3;
    for (int i = 0; i < 200; ++i) {
        TrajectoryPoint pt;
        pt.t = 0.25 * i;
        pt.eps_g = std::exp(3.0 * rng.next());
        pt.q = rng.next();
        pt.r = rng.next();
        pt.q_kl = rng.next() * 1e-4;
        pt.r_kl = rng.next() * 1e6;
        traj.points.push_back(pt);
        TrajectoryPoint se;
        se.t = pt.t;
        se.eps_g = std::abs(rng.next());
        traj.stderr_points.push_back(se);
    }
    std::istringstream in(io::emit_trajectory_csv(traj));
    const Trajectory back = io::parse_trajectory_csv(in);
    REQUIRE(back.points.size() == traj.points.size());
    REQUIRE(back.stderr_points.size() == traj.stderr_points.size());
    // Nine significant digits guarantee half an ulp in the ninth digit,
    // i.e. 5e-9 relative.
    auto close = [](double a, double b) {
        return std::abs(a - b) <= 5e-9 * std::max(std::abs(a), std::abs(b));
    };
    for (std::size_t i = 0; i < traj.points.size(); ++i) {
        CHECK(close(back.points[i].t, traj.points[i].t));
        CHECK(close(back.points[i].eps_g, traj.points[i].eps_g));
        CHECK(close(back.points[i].q, traj.points[i].q));
        CHECK(close(back.points[i].r, traj.points[i].r));
        CHECK(close(back.points[i].q_kl, traj.points[i].q_kl));
        CHECK(close(back.points[i].r_kl, traj.points[i].r_kl));
        CHECK(close(back.stderr_points[i].eps_g, traj.stderr_points[i].eps_g));
    }
}

TEST_CASE("trajectory csv parse errors") {
    std::istringstream bad_header("time,eps\n");
    CHECK_THROWS_AS(io::parse_trajectory_csv(bad_header), std::runtime_error);
    std::istringstream bad_cells("t,eps_g,eps_g_stderr,Q,R,Q_kl,R_kl\n1,2\n");
    CHECK_THROWS_AS(io::parse_trajectory_csv(bad_cells), std::runtime_error);
    std::istringstream bad_number(
        "t,eps_g,eps_g_stderr,Q,R,Q_kl,R_kl\n1,x,,1,0,,\n");
    CHECK_THROWS_AS(io::parse_trajectory_csv(bad_number), std::runtime_error);
}

TEST_CASE("number formatting uses nine significant digits") {
    CHECK(io::format_number(0.25) == "0.25");
    CHECK(io::format_number(1.0 / 3.0) == "0.333333333");
    CHECK(io::format_number(9.375e-4) == "0.0009375");
    CHECK(io::format_number(123456789012.0) == "1.23456789e+11");
}

TEST_CASE("svg output is byte-stable and renders constants") {
    Trajectory flat;
    flat.meta.source = "theory_closed";
    for (int i = 0; i <= 10; ++i) {
        TrajectoryPoint pt;
        pt.t = i;
        pt.eps_g = 0.125;
        flat.points.push_back(pt);
    }
    io::PlotPanel panel;
    panel.title = "flat";
    panel.x_label = "t";
    panel.y_label = "eps_g";
    io::PlotSeries s;
    s.label = "const";
    for (const TrajectoryPoint& pt : flat.points)
        s.points.emplace_back(pt.t, pt.eps_g);
    panel.series.push_back(s);

    const std::string svg1 = io::render_svg({panel});
    const std::string svg2 = io::render_svg({panel});
    CHECK(svg1 == svg2);
    CHECK(svg1.find("<polyline") != std::string::npos);
    CHECK(svg1.find("</svg>") != std::string::npos);

    // A horizontal line: every polyline y coordinate is identical.
    const std::size_t start = svg1.find("<polyline points=\"");
    REQUIRE(start != std::string::npos);
    const std::size_t end = svg1.find('"', start + 18);
    const std::string pts = svg1.substr(start + 18, end - start - 18);
    std::string first_y;
    std::istringstream tok(pts);
    std::string pair;
    while (tok >> pair) {
        const std::string y = pair.substr(pair.find(',') + 1);
        if (first_y.empty())
            first_y = y;
        else
            CHECK(y == first_y);
    }
}

TEST_CASE("emit_plot requires input and writes a file") {
    CHECK_THROWS_AS(io::emit_plot({}, 2, "/tmp/never.svg"),
                    std::invalid_argument);
}

TEST_CASE("log-scale panels skip non-positive values") {
    io::PlotPanel panel;
    panel.log_y = true;
    io::PlotSeries s;
    s.label = "mixed";
    s.points = {{0.0, 1.0}, {1.0, 0.0}, {2.0, 1e-3}};
    panel.series.push_back(s);
    const std::string svg = io::render_svg({panel});
    CHECK(svg.find("polyline") != std::string::npos);
}

TEST_SUITE_END();
