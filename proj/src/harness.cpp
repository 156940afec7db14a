#include "nplab/harness.hpp"

#include <cmath>
#include <stdexcept>

#include "nplab/learning.hpp"
#include "nplab/ode.hpp"
#include "nplab/order_params.hpp"

namespace nplab {

void ScenarioConfig::validate() const {
    model.validate();
    if (replications < 1)
        throw std::invalid_argument("replications must be >= 1");
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be > 0");
    if (!(record_interval > 0.0))
        throw std::invalid_argument("record_interval must be > 0");
    if (mode == Mode::simulate &&
        record_interval * model.n_inputs < 1.0 - 1e-9)
        throw std::invalid_argument(
            "record_interval must be at least 1/N in simulate mode");
    if (!(ode_dt > 0.0)) throw std::invalid_argument("ode_dt must be > 0");
}

theory::TheoryParams ScenarioConfig::theory_params() const {
    theory::TheoryParams p;
    p.m_outputs = model.n_outputs;
    p.eta = model.eta;
    p.gamma = model.gamma();
    p.sigma_xi_sq = model.sigma_xi_sq;
    p.t_kk = 1.0;
    p.t_kl = t_kl;
    return p;
}

std::vector<double> ScenarioConfig::record_times() const {
    std::vector<double> times;
    const long long count =
        static_cast<long long>(std::floor(t_max / record_interval + 1e-9));
    times.reserve(count + 1);
    for (long long j = 0; j <= count; ++j) times.push_back(j * record_interval);
    return times;
}

namespace {

TrajectoryPoint measure_point(double t, const WeightMatrix& teacher,
                              const WeightMatrix& student) {
    const OrderParameters op = measure(teacher, student);
    const int m = op.m;
    TrajectoryPoint pt;
    pt.t = t;
    pt.eps_g = eps_g_from_params(op);
    double q_diag = 0.0, r_diag = 0.0;
    for (int k = 0; k < m; ++k) {
        q_diag += op.q_at(k, k);
        r_diag += op.r_at(k, k);
    }
    pt.q = q_diag / m;
    pt.r = r_diag / m;
    if (m >= 2) {
        double q_off = 0.0, r_off = 0.0;
        for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l) {
                if (k == l) continue;
                q_off += op.q_at(k, l);
                r_off += op.r_at(k, l);
            }
        const double pairs = static_cast<double>(m) * (m - 1);
        pt.q_kl = q_off / pairs;
        pt.r_kl = r_off / pairs;
    }
    return pt;
}

bool point_finite(const TrajectoryPoint& pt, int m) {
    if (!std::isfinite(pt.eps_g) || !std::isfinite(pt.q) || !std::isfinite(pt.r))
        return false;
    if (m >= 2 && (!std::isfinite(pt.q_kl) || !std::isfinite(pt.r_kl)))
        return false;
    return true;
}

}  // namespace

Trajectory run_single_replication(const ScenarioConfig& sc, int replication) {
    sc.validate();
    const ModelConfig& cfg = sc.model;
    const int n = cfg.n_inputs;
    const int m = cfg.n_outputs;

    GaussianSampler teacher_rng(
        substream_seed(sc.seed, Stream::teacher_init, replication));
    GaussianSampler student_rng(
        substream_seed(sc.seed, Stream::student_init, replication));
    GaussianSampler input_rng(substream_seed(sc.seed, Stream::inputs, replication));
    GaussianSampler xi_rng(
        substream_seed(sc.seed, Stream::perturbation, replication));
    GaussianSampler zeta_rng(
        substream_seed(sc.seed, Stream::baseline, replication));

    const WeightMatrix teacher = sample_teacher(cfg, teacher_rng);
    WeightMatrix student = sample_student(cfg, student_rng);

    const long long n_steps = std::llround(sc.t_max * n);
    const std::vector<double> times = sc.record_times();
    std::vector<long long> record_steps(times.size());
    for (std::size_t j = 0; j < times.size(); ++j) {
        record_steps[j] = std::llround(times[j] * n);
        if (j > 0 && record_steps[j] <= record_steps[j - 1])
            throw std::invalid_argument(
                "record grid does not map to distinct iteration counts");
    }

    Trajectory traj;
    traj.meta.source = "simulate";
    traj.meta.m_outputs = m;
    traj.meta.replications = 1;

    ReplicationSummary summary;
    summary.index = replication;

    std::vector<double> x(n), d(m), y(m), xi(m), zeta(m);
    const double sigma_xi = std::sqrt(cfg.sigma_xi_sq);
    const double sigma_zeta = std::sqrt(cfg.sigma_zeta_sq);
    const bool dnp = cfg.rule == Rule::dnp;
    UpdateRecord record;
    record.delta.reserve(m);

    const TrajectoryPoint first = measure_point(0.0, teacher, student);
    summary.eps_g_initial = first.eps_g;
    summary.eps_g_final = first.eps_g;
    traj.points.push_back(first);

    const double blowup_level = 10.0 * summary.eps_g_initial;
    std::size_t next_record = 1;

    for (long long step = 1; step <= n_steps && next_record < times.size();
         ++step) {
        input_rng.fill(x);
        forward_into(teacher, x, d);
        forward_into(student, x, y);
        xi_rng.fill_scaled(xi, sigma_xi);
        if (dnp) zeta_rng.fill_scaled(zeta, sigma_zeta);
        step_in_place(student, d, y, x, xi,
                      dnp ? std::span<const double>(zeta)
                          : std::span<const double>(),
                      cfg, record);

        if (!std::isfinite(record.error_diff)) {
            summary.diverged = true;
            summary.t_diverged = static_cast<double>(step) / n;
            break;
        }
        if (step == record_steps[next_record]) {
            const double t = static_cast<double>(step) / n;
            const TrajectoryPoint pt = measure_point(t, teacher, student);
            if (!point_finite(pt, m)) {
                summary.diverged = true;
                summary.t_diverged = t;
                break;
            }
            traj.points.push_back(pt);
            summary.eps_g_final = pt.eps_g;
            if (std::isnan(summary.t_first_blowup) && pt.eps_g >= blowup_level)
                summary.t_first_blowup = t;
            ++next_record;
        }
    }

    if (summary.diverged && std::isnan(summary.t_first_blowup))
        summary.t_first_blowup = summary.t_diverged;

    traj.meta.diverged = summary.diverged;
    traj.meta.t_diverged = summary.t_diverged;
    traj.meta.diverged_count = summary.diverged ? 1 : 0;
    traj.meta.replication_summaries.push_back(summary);
    return traj;
}

Trajectory run_simulation(const ScenarioConfig& sc) {
    sc.validate();
    if (sc.mode != Mode::simulate)
        throw std::invalid_argument("run_simulation requires simulate mode");

    const int reps = sc.replications;
    std::vector<Trajectory> runs;
    runs.reserve(reps);
    for (int r = 0; r < reps; ++r)
        runs.push_back(run_single_replication(sc, r));

    const std::vector<double> times = sc.record_times();
    const int m = sc.model.n_outputs;

    Trajectory out;
    out.meta.source = "simulate";
    out.meta.m_outputs = m;
    out.meta.replications = reps;
    for (const Trajectory& run : runs) {
        const ReplicationSummary& s = run.meta.replication_summaries.front();
        out.meta.replication_summaries.push_back(s);
        if (s.diverged) {
            ++out.meta.diverged_count;
            out.meta.diverged = true;
            if (std::isnan(out.meta.t_diverged) ||
                s.t_diverged < out.meta.t_diverged)
                out.meta.t_diverged = s.t_diverged;
        }
    }

    // Mean and standard error per record point over the replications that
    // still have that point; a fixed index-ordered reduction.
    for (std::size_t j = 0; j < times.size(); ++j) {
        TrajectoryPoint mean;
        mean.t = std::numeric_limits<double>::quiet_NaN();
        double sq = 0.0, sr = 0.0, se = 0.0, sqkl = 0.0, srkl = 0.0;
        double sq2 = 0.0, sr2 = 0.0, se2 = 0.0, sqkl2 = 0.0, srkl2 = 0.0;
        int alive = 0;
        for (const Trajectory& run : runs) {
            if (j >= run.points.size()) continue;
            const TrajectoryPoint& pt = run.points[j];
            mean.t = pt.t;
            ++alive;
            se += pt.eps_g;
            se2 += pt.eps_g * pt.eps_g;
            sq += pt.q;
            sq2 += pt.q * pt.q;
            sr += pt.r;
            sr2 += pt.r * pt.r;
            if (m >= 2) {
                sqkl += pt.q_kl;
                sqkl2 += pt.q_kl * pt.q_kl;
                srkl += pt.r_kl;
                srkl2 += pt.r_kl * pt.r_kl;
            }
        }
        if (alive == 0) break;
        mean.eps_g = se / alive;
        mean.q = sq / alive;
        mean.r = sr / alive;
        if (m >= 2) {
            mean.q_kl = sqkl / alive;
            mean.r_kl = srkl / alive;
        }
        out.points.push_back(mean);

        if (reps >= 2) {
            auto stderr_of = [alive](double sum, double sum2) {
                if (alive < 2) return std::numeric_limits<double>::quiet_NaN();
                double var = (sum2 - sum * sum / alive) / (alive - 1);
                if (var < 0.0) var = 0.0;
                return std::sqrt(var / alive);
            };
            TrajectoryPoint sd;
            sd.t = mean.t;
            sd.eps_g = stderr_of(se, se2);
            sd.q = stderr_of(sq, sq2);
            sd.r = stderr_of(sr, sr2);
            if (m >= 2) {
                sd.q_kl = stderr_of(sqkl, sqkl2);
                sd.r_kl = stderr_of(srkl, srkl2);
            }
            out.stderr_points.push_back(sd);
        }
    }
    return out;
}

Trajectory run_theory(const ScenarioConfig& sc) {
    sc.validate();
    const theory::TheoryParams p = sc.theory_params();
    const bool snp = sc.model.rule == Rule::snp;
    const int m = p.m_outputs;

    if (sc.mode == Mode::theory_closed) {
        const theory::ClosedFormSolution sol =
            theory::classify_stability(p, sc.q0, sc.r0);
        if (!sol.stable)
            throw std::domain_error(
                "theory_closed: eta = " + std::to_string(p.eta) +
                " is at or beyond the critical step size " +
                std::to_string(sol.eta_critical) +
                "; use theory_ode mode to integrate the divergent dynamics");
        Trajectory traj;
        traj.meta.source = "theory_closed";
        traj.meta.m_outputs = m;
        for (double t : sc.record_times()) {
            TrajectoryPoint pt;
            pt.t = t;
            pt.eps_g = snp ? theory::eps_g_closed_snp(t, sol.eps0, m, p.eta,
                                                      p.sigma_xi_sq)
                           : theory::eps_g_closed(t, sol.eps0, p);
            pt.q = theory::closed_q(t, sc.q0, sc.r0, p);
            pt.r = theory::closed_r(t, sc.r0, p.eta);
            if (m >= 2) {
                pt.q_kl = theory::closed_q_kl(t, sc.q_kl0, sc.r_kl0, sc.r_kl0,
                                              sc.t_kl, p.eta);
                pt.r_kl = theory::closed_r_kl(t, sc.r_kl0, sc.t_kl, p.eta);
            }
            traj.points.push_back(pt);
        }
        return traj;
    }

    if (sc.mode == Mode::theory_ode) {
        const long long stride = std::llround(sc.record_interval / sc.ode_dt);
        if (stride < 1 ||
            std::abs(stride * sc.ode_dt - sc.record_interval) > 1e-9)
            throw std::invalid_argument(
                "theory_ode: record_interval must be a multiple of dt");
        IntegrationSpec spec;
        spec.t_start = 0.0;
        spec.t_end = sc.t_max;
        spec.dt = sc.ode_dt;
        spec.record_every = stride;
        theory::TheoryState s0;
        s0.q = sc.q0;
        s0.r = sc.r0;
        s0.q_kl = sc.q_kl0;
        s0.r_kl = sc.r_kl0;
        const OdeRhs rhs = snp ? OdeRhs(theory::ode_rhs_snp)
                               : OdeRhs(theory::ode_rhs_dnp);
        return rk4(rhs, s0, spec, p);
    }

    throw std::invalid_argument("run_theory requires a theory mode");
}

ComparisonReport compare(const Trajectory& sim, const Trajectory& theory,
                         double tol_rel, double window_lo, double window_hi) {
    if (sim.points.size() != theory.points.size())
        throw std::invalid_argument("compare: record grids differ in length");
    for (std::size_t i = 0; i < sim.points.size(); ++i)
        if (std::abs(sim.points[i].t - theory.points[i].t) > 1e-9)
            throw std::invalid_argument("compare: record grids differ at index " +
                                        std::to_string(i));

    constexpr double kAbsoluteFloor = 1e-6;
    ComparisonReport report;
    report.tol_rel = tol_rel;
    report.window_lo = window_lo;
    report.window_hi = window_hi;

    double sum_rel = 0.0;
    for (std::size_t i = 0; i < sim.points.size(); ++i) {
        const double t = theory.points[i].t;
        if (t < window_lo || t > window_hi) continue;
        ComparisonPoint cp;
        cp.t = t;
        cp.reference = theory.points[i].eps_g;
        cp.candidate = sim.points[i].eps_g;
        cp.abs_diff = std::abs(cp.candidate - cp.reference);
        cp.absolute_mode = std::abs(cp.reference) < kAbsoluteFloor;
        cp.rel_diff = cp.absolute_mode ? cp.abs_diff
                                       : cp.abs_diff / std::abs(cp.reference);
        if (report.points.empty() || cp.rel_diff > report.max_rel) {
            report.max_rel = cp.rel_diff;
            report.t_at_max = cp.t;
        }
        sum_rel += cp.rel_diff;
        report.points.push_back(cp);
    }
    if (report.points.empty())
        throw std::invalid_argument("compare: no points in the window");
    report.mean_rel = sum_rel / report.points.size();
    report.pass = report.max_rel <= tol_rel;
    return report;
}

std::vector<SweepSummary> sweep(const ScenarioConfig& base, SweepAxis axis,
                                const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("sweep: no values");

    std::vector<SweepSummary> out;
    out.reserve(values.size());
    for (double v : values) {
        SweepSummary s;
        s.value = v;
        try {
            ScenarioConfig sc = base;
            switch (axis) {
                case SweepAxis::m_outputs: {
                    const long long m = std::llround(v);
                    if (m < 1 || std::abs(v - m) > 1e-12)
                        throw std::invalid_argument(
                            "sweep: M values must be positive integers");
                    sc.model.n_outputs = static_cast<int>(m);
                    break;
                }
                case SweepAxis::eta:
                    sc.model.eta = v;
                    break;
                case SweepAxis::gamma:
                    if (v < 0.0)
                        throw std::invalid_argument("sweep: gamma must be >= 0");
                    sc.model.sigma_zeta_sq = v * sc.model.sigma_xi_sq;
                    break;
            }
            sc.validate();

            const theory::TheoryParams p = sc.theory_params();
            const bool snp = sc.model.rule == Rule::snp;
            s.decay_rate = snp ? theory::decay_rate_snp(p.m_outputs, p.eta)
                               : theory::decay_rate(p);
            s.eta_opt = snp ? theory::eta_opt_snp(p.m_outputs)
                            : theory::eta_opt(p.m_outputs, p.gamma);
            try {
                s.residual = snp ? theory::residual_error_snp(p.m_outputs, p.eta,
                                                              p.sigma_xi_sq)
                                 : theory::residual_error(p);
            } catch (const std::domain_error&) {
                // Unstable step size: no finite residual.
            }
            if (!snp) {
                try {
                    s.gamma_opt = theory::gamma_opt(p.m_outputs, p.eta);
                } catch (const std::domain_error&) {
                }
            }

            const Trajectory traj = sc.mode == Mode::simulate
                                        ? run_simulation(sc)
                                        : run_theory(sc);
            if (!traj.points.empty()) s.final_eps_g = traj.points.back().eps_g;
        } catch (const std::exception& e) {
            s.error = e.what();
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace nplab
