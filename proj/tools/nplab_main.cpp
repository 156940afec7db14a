#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "nplab/csv.hpp"
#include "nplab/figures.hpp"
#include "nplab/harness.hpp"
#include "nplab/scenario_file.hpp"
#include "nplab/theory.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCompareFail = 2;

void write_output(const std::string& body, const std::string& path) {
    if (path.empty()) {
        std::cout << body;
        return;
    }
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    const std::size_t n = std::fwrite(body.data(), 1, body.size(), f);
    std::fclose(f);
    if (n != body.size()) throw std::runtime_error("write failed: " + path);
}

int run_scenario_command(const std::string& config_path,
                         const std::string& out_path, nplab::Mode mode,
                         double ode_dt) {
    nplab::ScenarioConfig sc = config_path.empty()
                                   ? nplab::io::default_scenario()
                                   : nplab::io::read_scenario_file(config_path);
    sc.mode = mode;
    sc.ode_dt = ode_dt;
    const nplab::Trajectory traj = mode == nplab::Mode::simulate
                                       ? nplab::run_simulation(sc)
                                       : nplab::run_theory(sc);
    write_output(nplab::io::emit_trajectory_csv(traj), out_path);
    return kExitOk;
}

int run_compare(const std::string& sim_path, const std::string& theory_path,
                double tol, double t_min, double t_max, bool verbose) {
    const nplab::Trajectory sim = nplab::io::read_trajectory_csv(sim_path);
    const nplab::Trajectory theory = nplab::io::read_trajectory_csv(theory_path);
    const nplab::ComparisonReport rep =
        nplab::compare(sim, theory, tol, t_min, t_max);

    using nplab::io::format_number;
    if (verbose) {
        std::cout << "t,reference,candidate,abs_diff,rel_diff,mode\n";
        for (const nplab::ComparisonPoint& p : rep.points)
            std::cout << format_number(p.t) << "," << format_number(p.reference)
                      << "," << format_number(p.candidate) << ","
                      << format_number(p.abs_diff) << ","
                      << format_number(p.rel_diff) << ","
                      << (p.absolute_mode ? "abs" : "rel") << "\n";
    }
    std::cout << "points compared   " << rep.points.size() << "\n";
    std::cout << "window            [" << format_number(rep.window_lo) << ", "
              << format_number(rep.window_hi) << "]\n";
    std::cout << "max rel diff      " << format_number(rep.max_rel) << " at t="
              << format_number(rep.t_at_max) << "\n";
    std::cout << "mean rel diff     " << format_number(rep.mean_rel) << "\n";
    std::cout << "tolerance         " << format_number(rep.tol_rel) << "\n";
    std::cout << (rep.pass ? "PASS" : "FAIL") << "\n";
    return rep.pass ? kExitOk : kExitCompareFail;
}

int run_optimize(int m, double gamma, double sigma_xi_sq, double eta,
                 bool have_eta) {
    using namespace nplab::theory;
    using nplab::io::format_number;

    auto row = [](const std::string& key, const std::string& value) {
        std::printf("%-18s%s\n", key.c_str(), value.c_str());
    };
    row("M", std::to_string(m));
    row("gamma", format_number(gamma));
    row("sigma_xi_sq", format_number(sigma_xi_sq));
    row("eta_opt", format_number(eta_opt(m, gamma)));
    row("gamma_at_eta_opt", format_number(gamma_at_eta_opt(m)));
    row("re_at_eta_opt", format_number(re_at_eta_opt(m, gamma, sigma_xi_sq)));
    row("eta_opt_snp", format_number(eta_opt_snp(m)));
    if (have_eta) {
        TheoryParams p;
        p.m_outputs = m;
        p.eta = eta;
        p.gamma = gamma;
        p.sigma_xi_sq = sigma_xi_sq;
        const ClosedFormSolution sol = classify_stability(p);
        row("eta", format_number(eta));
        row("decay_rate", format_number(sol.decay_rate));
        row("eta_critical", format_number(sol.eta_critical));
        row("stable", sol.stable ? "yes" : "no");
        row("residual_error", sol.stable ? format_number(sol.residual) : "n/a");
        try {
            row("gamma_opt", format_number(gamma_opt(m, eta)));
        } catch (const std::domain_error&) {
            row("gamma_opt", "n/a");
        }
    }
    return kExitOk;
}

int run_sweep(const std::string& config_path, const std::string& axis_name,
              const std::vector<double>& values, const std::string& out_path) {
    nplab::ScenarioConfig base = config_path.empty()
                                     ? nplab::io::default_scenario()
                                     : nplab::io::read_scenario_file(config_path);
    nplab::SweepAxis axis;
    if (axis_name == "M")
        axis = nplab::SweepAxis::m_outputs;
    else if (axis_name == "eta")
        axis = nplab::SweepAxis::eta;
    else if (axis_name == "gamma")
        axis = nplab::SweepAxis::gamma;
    else
        throw std::runtime_error("unknown sweep axis '" + axis_name +
                                 "' (expected M, eta or gamma)");

    const std::vector<nplab::SweepSummary> rows =
        nplab::sweep(base, axis, values);

    using nplab::io::format_number;
    std::string csv =
        "value,final_eps_g,residual_error,decay_rate,eta_opt,gamma_opt,error\n";
    for (const nplab::SweepSummary& s : rows) {
        auto cell = [](double v) {
            return std::isnan(v) ? std::string() : nplab::io::format_number(v);
        };
        std::string err = s.error;
        for (char& c : err)
            if (c == ',' || c == '\n') c = ';';
        csv += format_number(s.value) + "," + cell(s.final_eps_g) + "," +
               cell(s.residual) + "," + cell(s.decay_rate) + "," +
               cell(s.eta_opt) + "," + cell(s.gamma_opt) + "," + err + "\n";
    }
    write_output(csv, out_path);
    return kExitOk;
}

int run_figures(int fig, const nplab::FigureOptions& opt) {
    const nplab::FigureResult result = nplab::run_figure(fig, opt);
    for (const std::string& f : result.files) std::cout << "wrote " << f << "\n";
    for (const std::string& line : result.report_lines)
        std::cout << line << "\n";
    return result.compare_pass ? kExitOk : kExitCompareFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "nplab: teacher-student node-perturbation learning, simulation and "
        "theory"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    double ode_dt = 1e-3;

    CLI::App* simulate = app.add_subcommand(
        "simulate", "run the stochastic learning process and emit a CSV");
    simulate->add_option("-c,--config", config_path, "scenario file");
    simulate->add_option("-o,--output", out_path, "output CSV (default stdout)");

    CLI::App* theory = app.add_subcommand(
        "theory", "evaluate the closed-form learning curves and emit a CSV");
    theory->add_option("-c,--config", config_path, "scenario file");
    theory->add_option("-o,--output", out_path, "output CSV (default stdout)");

    CLI::App* integrate = app.add_subcommand(
        "integrate", "integrate the order-parameter equations and emit a CSV");
    integrate->add_option("-c,--config", config_path, "scenario file");
    integrate->add_option("-o,--output", out_path, "output CSV (default stdout)");
    integrate->add_option("--dt", ode_dt, "integrator step (default 1e-3)");

    CLI::App* cmp = app.add_subcommand(
        "compare", "check a simulated CSV against a theory CSV");
    std::string sim_path, theory_path;
    double tol = 0.05, t_min = -1e300, t_max = 1e300;
    bool verbose = false;
    cmp->add_option("sim", sim_path, "simulation CSV")->required();
    cmp->add_option("theory", theory_path, "theory CSV")->required();
    cmp->add_option("--tol", tol, "max relative difference")->required();
    cmp->add_option("--t-min", t_min, "window lower edge");
    cmp->add_option("--t-max", t_max, "window upper edge");
    cmp->add_flag("-v,--verbose", verbose, "print per-point differences");

    CLI::App* optimize = app.add_subcommand(
        "optimize", "print optimal step sizes and noise ratios");
    int opt_m = 1;
    double opt_gamma = 1.0, opt_sigma = 0.01, opt_eta = 0.0;
    optimize->add_option("--M", opt_m, "number of outputs")
        ->required()
        ->check(CLI::PositiveNumber);
    optimize->add_option("--gamma", opt_gamma, "noise-variance ratio (default 1)");
    optimize->add_option("--sigma-xi-sq", opt_sigma,
                         "perturbation-noise variance (default 0.01)");
    CLI::Option* eta_opt_flag =
        optimize->add_option("--eta", opt_eta, "evaluate at this step size too");

    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "run the base scenario across an axis of values");
    std::string axis_name;
    std::vector<double> sweep_values;
    sweep_cmd->add_option("-c,--config", config_path, "base scenario file");
    sweep_cmd->add_option("--axis", axis_name, "M, eta or gamma")->required();
    sweep_cmd->add_option("--values", sweep_values, "comma-separated values")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("-o,--output", out_path,
                          "output CSV (default stdout)");

    CLI::App* figures = app.add_subcommand(
        "figures", "render a standard figure with its backing CSVs");
    int fig = 0;
    nplab::FigureOptions fig_opt;
    figures->add_option("--fig", fig, "figure id, 2..7")->required();
    figures->add_option("--out-dir", fig_opt.out_dir,
                        "output directory (must exist, default .)");
    figures->add_option("--seed", fig_opt.seed, "master seed (default 12345)");
    figures->add_option("--replications", fig_opt.replications,
                        "simulated replications (default 20)");
    figures->add_option("--N", fig_opt.n_inputs,
                        "input dimension for simulations (default 1000)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (simulate->parsed())
            return run_scenario_command(config_path, out_path,
                                        nplab::Mode::simulate, ode_dt);
        if (theory->parsed())
            return run_scenario_command(config_path, out_path,
                                        nplab::Mode::theory_closed, ode_dt);
        if (integrate->parsed())
            return run_scenario_command(config_path, out_path,
                                        nplab::Mode::theory_ode, ode_dt);
        if (cmp->parsed())
            return run_compare(sim_path, theory_path, tol, t_min, t_max,
                               verbose);
        if (optimize->parsed())
            return run_optimize(opt_m, opt_gamma, opt_sigma, opt_eta,
                                eta_opt_flag->count() > 0);
        if (sweep_cmd->parsed())
            return run_sweep(config_path, axis_name, sweep_values, out_path);
        if (figures->parsed()) return run_figures(fig, fig_opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
