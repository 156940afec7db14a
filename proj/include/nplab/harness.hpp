#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nplab/model.hpp"
#include "nplab/theory.hpp"
#include "nplab/trajectory.hpp"

namespace nplab {

enum class Mode { simulate, theory_closed, theory_ode };

// A full run description: the model, how to evaluate it, and the initial
// overlaps used by the theory modes. Simulated runs derive their iteration
// count as round(t_max * N) and record whenever m/N crosses a multiple of
// record_interval; theory modes ignore seed and replications.
struct ScenarioConfig {
    ModelConfig model;
    Mode mode = Mode::simulate;
    std::uint64_t seed = 12345;
    int replications = 20;
    double t_max = 10.0;
    double record_interval = 0.25;
    double q0 = 1.0;
    double r0 = 0.0;
    double q_kl0 = 0.0;
    double r_kl0 = 0.0;
    double t_kl = 0.0;
    double ode_dt = 1e-3;  // theory_ode only

    void validate() const;  // throws std::invalid_argument

    theory::TheoryParams theory_params() const;
    std::vector<double> record_times() const;
};

// One replication of the stochastic learning process, identified by its
// index so the result does not depend on which order replications run in.
Trajectory run_single_replication(const ScenarioConfig& sc, int replication);

// All replications, aggregated per record point (mean, and stderr when
// replications >= 2). Replications that reach a non-finite state stop
// contributing from the divergence time onward and are counted in meta.
Trajectory run_simulation(const ScenarioConfig& sc);

// Closed-form or integrated theory on the same record grid. Closed mode
// refuses step sizes at or beyond the critical one (use theory_ode to
// look at divergence itself).
Trajectory run_theory(const ScenarioConfig& sc);

struct ComparisonPoint {
    double t = 0.0;
    double reference = 0.0;   // theory value
    double candidate = 0.0;   // simulation value
    double abs_diff = 0.0;
    double rel_diff = 0.0;    // abs_diff when the reference is below the floor
    bool absolute_mode = false;
};

// eps_g agreement between a simulated and a theory trajectory over a time
// window. Differences are relative to the theory value except where it is
// below 1e-6, where the absolute difference is used instead.
struct ComparisonReport {
    std::vector<ComparisonPoint> points;
    double max_rel = 0.0;
    double mean_rel = 0.0;
    double t_at_max = 0.0;
    double tol_rel = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    bool pass = false;
};

ComparisonReport compare(const Trajectory& sim, const Trajectory& theory,
                         double tol_rel,
                         double window_lo = -1e300, double window_hi = 1e300);

enum class SweepAxis { m_outputs, eta, gamma };

struct SweepSummary {
    double value = 0.0;
    double final_eps_g = std::numeric_limits<double>::quiet_NaN();
    double residual = std::numeric_limits<double>::quiet_NaN();
    double decay_rate = std::numeric_limits<double>::quiet_NaN();
    double eta_opt = std::numeric_limits<double>::quiet_NaN();
    double gamma_opt = std::numeric_limits<double>::quiet_NaN();
    std::string error;  // non-empty when this value failed
};

// Runs the base scenario once per value of the chosen axis. A failing
// value records its error and the sweep continues.
std::vector<SweepSummary> sweep(const ScenarioConfig& base, SweepAxis axis,
                                const std::vector<double>& values);

}  // namespace nplab
