#pragma once

#include <limits>
#include <string>
#include <vector>

namespace nplab {

// One record of the learning dynamics. Fields that do not apply to a run
// (cross overlaps with a single output, stderr without replications) are
// quiet NaN and serialize as empty cells.
struct TrajectoryPoint {
    double t = 0.0;
    double eps_g = std::numeric_limits<double>::quiet_NaN();
    double q = std::numeric_limits<double>::quiet_NaN();
    double r = std::numeric_limits<double>::quiet_NaN();
    double q_kl = std::numeric_limits<double>::quiet_NaN();
    double r_kl = std::numeric_limits<double>::quiet_NaN();
};

// Per-replication outcome of a simulated run.
struct ReplicationSummary {
    int index = 0;
    bool diverged = false;
    double t_diverged = std::numeric_limits<double>::quiet_NaN();
    double eps_g_initial = std::numeric_limits<double>::quiet_NaN();
    double eps_g_final = std::numeric_limits<double>::quiet_NaN();
    // First record time where eps_g reached 10x its initial value; NaN if never.
    double t_first_blowup = std::numeric_limits<double>::quiet_NaN();
};

struct TrajectoryMeta {
    std::string source;  // "simulate", "theory_closed" or "theory_ode"
    int m_outputs = 0;
    int replications = 0;
    bool diverged = false;
    double t_diverged = std::numeric_limits<double>::quiet_NaN();
    int diverged_count = 0;
    std::vector<ReplicationSummary> replication_summaries;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    // Standard errors across replications, same grid as points; empty
    // unless the run had at least two replications.
    std::vector<TrajectoryPoint> stderr_points;
    TrajectoryMeta meta;
};

}  // namespace nplab
