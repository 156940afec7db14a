#include "nplab/figures.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "nplab/csv.hpp"
#include "nplab/harness.hpp"
#include "nplab/scenario_file.hpp"
#include "nplab/svg_plot.hpp"
#include "nplab/theory.hpp"

namespace nplab {

namespace {

constexpr std::array<int, 4> kOutputCounts = {1, 3, 5, 8};

std::string join(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    if (dir.back() == '/') return dir + name;
    return dir + "/" + name;
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << body;
    if (!f) throw std::runtime_error("write failed: " + path);
}

ScenarioConfig base_scenario(const FigureOptions& opt) {
    ScenarioConfig sc = io::default_scenario();
    sc.seed = opt.seed;
    sc.replications = opt.replications;
    sc.model.n_inputs = opt.n_inputs;
    return sc;
}

FigureResult figure2(const FigureOptions& opt) {
    FigureResult result;
    std::vector<Trajectory> theory_runs, sim_runs;
    for (int m : kOutputCounts) {
        ScenarioConfig sc = base_scenario(opt);
        sc.model.n_outputs = m;
        sc.mode = Mode::theory_closed;
        theory_runs.push_back(run_theory(sc));
        sc.mode = Mode::simulate;
        sim_runs.push_back(run_simulation(sc));
    }

    io::PlotPanel panel;
    panel.title = "generalization error: closed form (lines) vs simulation";
    panel.x_label = "t";
    panel.y_label = "eps_g";
    for (std::size_t i = 0; i < kOutputCounts.size(); ++i) {
        const int m = kOutputCounts[i];
        const std::string theory_path =
            join(opt.out_dir, "fig2_theory_M" + std::to_string(m) + ".csv");
        const std::string sim_path =
            join(opt.out_dir, "fig2_sim_M" + std::to_string(m) + ".csv");
        io::write_trajectory_csv(theory_runs[i], theory_path);
        io::write_trajectory_csv(sim_runs[i], sim_path);
        result.files.push_back(theory_path);
        result.files.push_back(sim_path);

        io::PlotSeries line;
        line.label = "theory M=" + std::to_string(m);
        line.color = static_cast<int>(i);
        for (const TrajectoryPoint& pt : theory_runs[i].points)
            line.points.emplace_back(pt.t, pt.eps_g);
        panel.series.push_back(std::move(line));

        io::PlotSeries dots;
        dots.label = "sim M=" + std::to_string(m);
        dots.markers = true;
        dots.color = static_cast<int>(i);
        for (const TrajectoryPoint& pt : sim_runs[i].points)
            dots.points.emplace_back(pt.t, pt.eps_g);
        panel.series.push_back(std::move(dots));

        const ComparisonReport rep =
            compare(sim_runs[i], theory_runs[i], 0.05, 1.0, 10.0);
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "fig2 M=%d %s: max rel diff %.4f at t=%.6g (tol 0.05, "
                      "window [1,10])",
                      m, rep.pass ? "pass" : "FAIL", rep.max_rel, rep.t_at_max);
        result.report_lines.push_back(buf);
        if (!rep.pass) result.compare_pass = false;
    }

    const std::string svg_path = join(opt.out_dir, "fig2.svg");
    io::write_svg({panel}, svg_path);
    result.files.push_back(svg_path);
    return result;
}

FigureResult figure3(const FigureOptions& opt) {
    FigureResult result;
    std::string csv = "M,gamma_at_eta_opt,eta_opt\n";
    io::PlotSeries eta_series{"eta_opt", {}, false, 0};
    io::PlotSeries gamma_series{"gamma_at_eta_opt", {}, false, 1};
    for (int m = 1; m <= 20; ++m) {
        const double g = theory::gamma_at_eta_opt(m);
        const double e = theory::eta_opt(m, g);
        csv += io::format_number(m) + "," + io::format_number(g) + "," +
               io::format_number(e) + "\n";
        eta_series.points.emplace_back(m, e);
        gamma_series.points.emplace_back(m, g);
    }
    const std::string csv_path = join(opt.out_dir, "fig3.csv");
    write_text(csv_path, csv);
    result.files.push_back(csv_path);

    io::PlotPanel panel;
    panel.title = "optimal step size and optimal noise ratio";
    panel.x_label = "M";
    panel.y_label = "value";
    panel.series.push_back(std::move(eta_series));
    panel.series.push_back(std::move(gamma_series));
    const std::string svg_path = join(opt.out_dir, "fig3.svg");
    io::write_svg({panel}, svg_path);
    result.files.push_back(svg_path);
    return result;
}

FigureResult figure4(const FigureOptions& opt) {
    FigureResult result;
    constexpr double kSigmaXiSq = 0.01;
    std::string csv = "M,re_per_output,re_total\n";
    io::PlotSeries per{"RE per output", {}, false, 0};
    io::PlotSeries total{"RE total", {}, false, 1};
    for (int m = 1; m <= 20; ++m) {
        const double g = theory::gamma_at_eta_opt(m);
        const double re = theory::re_at_eta_opt(m, g, kSigmaXiSq);
        csv += io::format_number(m) + "," + io::format_number(re) + "," +
               io::format_number(m * re) + "\n";
        per.points.emplace_back(m, re);
        total.points.emplace_back(m, m * re);
    }
    const std::string csv_path = join(opt.out_dir, "fig4.csv");
    write_text(csv_path, csv);
    result.files.push_back(csv_path);

    io::PlotPanel panel;
    panel.title = "residual error at the optimal (eta, gamma) pair";
    panel.x_label = "M";
    panel.y_label = "residual error";
    panel.series.push_back(std::move(per));
    panel.series.push_back(std::move(total));
    const std::string svg_path = join(opt.out_dir, "fig4.svg");
    io::write_svg({panel}, svg_path);
    result.files.push_back(svg_path);
    return result;
}

FigureResult figure5(const FigureOptions& opt) {
    FigureResult result;
    constexpr double kSigmaXiSq = 0.01;
    std::string gamma_csv = "eta,M=1,M=3,M=5,M=8\n";
    std::string re_csv = "eta,M=1,M=3,M=5,M=8\n";

    io::PlotPanel gamma_panel;
    gamma_panel.title = "noise ratio minimizing the residual error";
    gamma_panel.x_label = "eta";
    gamma_panel.y_label = "gamma_opt";
    io::PlotPanel re_panel;
    re_panel.title = "residual error at gamma_opt";
    re_panel.x_label = "eta";
    re_panel.y_label = "residual error";
    re_panel.log_y = true;
    for (std::size_t i = 0; i < kOutputCounts.size(); ++i) {
        const std::string label = "M=" + std::to_string(kOutputCounts[i]);
        gamma_panel.series.push_back({label, {}, false, static_cast<int>(i)});
        re_panel.series.push_back({label, {}, false, static_cast<int>(i)});
    }

    for (int step = 1; step <= 100; ++step) {
        const double eta = 0.001 * step;
        gamma_csv += io::format_number(eta);
        re_csv += io::format_number(eta);
        for (std::size_t i = 0; i < kOutputCounts.size(); ++i) {
            const int m = kOutputCounts[i];
            const double g = theory::gamma_opt(m, eta);
            theory::TheoryParams p;
            p.m_outputs = m;
            p.eta = eta;
            p.gamma = g;
            p.sigma_xi_sq = kSigmaXiSq;
            const double re = theory::residual_error(p);
            gamma_csv += "," + io::format_number(g);
            re_csv += "," + io::format_number(re);
            gamma_panel.series[i].points.emplace_back(eta, g);
            re_panel.series[i].points.emplace_back(eta, re);
        }
        gamma_csv += "\n";
        re_csv += "\n";
    }

    const std::string gamma_path = join(opt.out_dir, "fig5_gamma_opt.csv");
    const std::string re_path = join(opt.out_dir, "fig5_residual.csv");
    write_text(gamma_path, gamma_csv);
    write_text(re_path, re_csv);
    result.files.push_back(gamma_path);
    result.files.push_back(re_path);

    const std::string svg_path = join(opt.out_dir, "fig5.svg");
    io::write_svg({gamma_panel, re_panel}, svg_path);
    result.files.push_back(svg_path);
    return result;
}

FigureResult figure6(const FigureOptions& opt) {
    FigureResult result;
    std::vector<std::pair<std::string, const Trajectory*>> labeled;
    std::vector<Trajectory> runs;
    runs.reserve(2 * kOutputCounts.size());
    std::vector<std::string> labels;

    for (int m : kOutputCounts) {
        // Fastest relaxation: eta_opt at the matching optimal noise ratio.
        ScenarioConfig fast = base_scenario(opt);
        fast.mode = Mode::theory_closed;
        fast.model.n_outputs = m;
        const double g = theory::gamma_at_eta_opt(m);
        fast.model.sigma_zeta_sq = g * fast.model.sigma_xi_sq;
        fast.model.eta = theory::eta_opt(m, g);
        fast.t_max = 1000.0;
        fast.record_interval = 1.0;
        runs.push_back(run_theory(fast));
        labels.push_back("M=" + std::to_string(m) + " opt-eta");

        ScenarioConfig slow = fast;
        slow.model.eta = 0.01;
        slow.model.sigma_zeta_sq = slow.model.sigma_xi_sq;  // gamma = 1
        runs.push_back(run_theory(slow));
        labels.push_back("M=" + std::to_string(m) + " eta=0.01");
    }
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const std::string suffix = i % 2 == 0 ? "opt" : "small";
        const std::string path =
            join(opt.out_dir, "fig6_theory_M" +
                                  std::to_string(kOutputCounts[i / 2]) + "_" +
                                  suffix + ".csv");
        io::write_trajectory_csv(runs[i], path);
        result.files.push_back(path);
        labeled.emplace_back(labels[i], &runs[i]);
    }
    const std::string svg_path = join(opt.out_dir, "fig6.svg");
    io::emit_plot(labeled, 6, svg_path);
    result.files.push_back(svg_path);
    return result;
}

FigureResult figure7(const FigureOptions& opt) {
    FigureResult result;
    std::vector<std::pair<std::string, const Trajectory*>> labeled;
    std::vector<Trajectory> runs;
    runs.reserve(2 * kOutputCounts.size());
    std::vector<std::string> labels;

    for (int m : kOutputCounts) {
        ScenarioConfig dnp = base_scenario(opt);
        dnp.mode = Mode::theory_closed;
        dnp.model.n_outputs = m;
        dnp.model.rule = Rule::dnp;
        dnp.model.eta = 0.01;
        dnp.model.sigma_zeta_sq = dnp.model.sigma_xi_sq;  // gamma = 1
        dnp.t_max = 1000.0;
        dnp.record_interval = 1.0;
        runs.push_back(run_theory(dnp));
        labels.push_back("M=" + std::to_string(m) + " DNP");

        ScenarioConfig snp = dnp;
        snp.model.rule = Rule::snp;
        snp.model.eta = theory::eta_opt_snp(m);
        runs.push_back(run_theory(snp));
        labels.push_back("M=" + std::to_string(m) + " SNP");
    }
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const std::string rule = i % 2 == 0 ? "dnp" : "snp";
        const std::string path =
            join(opt.out_dir, "fig7_" + rule + "_M" +
                                  std::to_string(kOutputCounts[i / 2]) + ".csv");
        io::write_trajectory_csv(runs[i], path);
        result.files.push_back(path);
        labeled.emplace_back(labels[i], &runs[i]);
    }
    const std::string svg_path = join(opt.out_dir, "fig7.svg");
    io::emit_plot(labeled, 7, svg_path);
    result.files.push_back(svg_path);
    return result;
}

}  // namespace

FigureResult run_figure(int figure, const FigureOptions& opt) {
    switch (figure) {
        case 2: return figure2(opt);
        case 3: return figure3(opt);
        case 4: return figure4(opt);
        case 5: return figure5(opt);
        case 6: return figure6(opt);
        case 7: return figure7(opt);
        default:
            throw std::invalid_argument("unknown figure id " +
                                        std::to_string(figure) +
                                        " (expected 2..7)");
    }
}

}  // namespace nplab
