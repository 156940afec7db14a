#include "nplab/ode.hpp"

#include <cmath>
#include <stdexcept>

namespace nplab {

void IntegrationSpec::validate() const {
    if (!(t_end > t_start))
        throw std::invalid_argument("IntegrationSpec: t_end must exceed t_start");
    if (!(dt > 0.0)) throw std::invalid_argument("IntegrationSpec: dt must be > 0");
    if (record_every < 1)
        throw std::invalid_argument("IntegrationSpec: record_every must be >= 1");
    const double steps = (t_end - t_start) / dt;
    if (steps > 9e15)
        throw std::invalid_argument("IntegrationSpec: step count overflows");
}

namespace {

bool finite_state(const theory::TheoryState& s) {
    return std::isfinite(s.q) && std::isfinite(s.r) && std::isfinite(s.q_kl) &&
           std::isfinite(s.r_kl);
}

TrajectoryPoint record_point(const theory::TheoryState& s,
                             const theory::TheoryParams& p) {
    TrajectoryPoint pt;
    pt.t = s.t;
    pt.eps_g = p.m_outputs * 0.5 * (p.t_kk - 2.0 * s.r + s.q);
    pt.q = s.q;
    pt.r = s.r;
    if (p.m_outputs >= 2) {
        pt.q_kl = s.q_kl;
        pt.r_kl = s.r_kl;
    }
    return pt;
}

}  // namespace

Trajectory rk4(const OdeRhs& rhs, theory::TheoryState state0,
               const IntegrationSpec& spec, const theory::TheoryParams& p) {
    spec.validate();
    p.validate();

    const long long n_steps = std::llround((spec.t_end - spec.t_start) / spec.dt);
    const double dt = spec.dt;

    Trajectory traj;
    traj.meta.source = "theory_ode";
    traj.meta.m_outputs = p.m_outputs;

    theory::TheoryState s = state0;
    s.t = spec.t_start;
    traj.points.push_back(record_point(s, p));

    for (long long step = 1; step <= n_steps; ++step) {
        const theory::TheoryDeriv k1 = rhs(s, p);
        theory::TheoryState mid = s;
        mid.q = s.q + 0.5 * dt * k1.dq;
        mid.r = s.r + 0.5 * dt * k1.dr;
        mid.q_kl = s.q_kl + 0.5 * dt * k1.dq_kl;
        mid.r_kl = s.r_kl + 0.5 * dt * k1.dr_kl;
        const theory::TheoryDeriv k2 = rhs(mid, p);
        mid.q = s.q + 0.5 * dt * k2.dq;
        mid.r = s.r + 0.5 * dt * k2.dr;
        mid.q_kl = s.q_kl + 0.5 * dt * k2.dq_kl;
        mid.r_kl = s.r_kl + 0.5 * dt * k2.dr_kl;
        const theory::TheoryDeriv k3 = rhs(mid, p);
        mid.q = s.q + dt * k3.dq;
        mid.r = s.r + dt * k3.dr;
        mid.q_kl = s.q_kl + dt * k3.dq_kl;
        mid.r_kl = s.r_kl + dt * k3.dr_kl;
        const theory::TheoryDeriv k4 = rhs(mid, p);

        const double w = dt / 6.0;
        s.q += w * (k1.dq + 2.0 * k2.dq + 2.0 * k3.dq + k4.dq);
        s.r += w * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr);
        s.q_kl += w * (k1.dq_kl + 2.0 * k2.dq_kl + 2.0 * k3.dq_kl + k4.dq_kl);
        s.r_kl += w * (k1.dr_kl + 2.0 * k2.dr_kl + 2.0 * k3.dr_kl + k4.dr_kl);
        s.t = spec.t_start + step * dt;

        if (!finite_state(s)) {
            traj.meta.diverged = true;
            traj.meta.t_diverged = s.t;
            break;
        }
        if (step % spec.record_every == 0 || step == n_steps)
            traj.points.push_back(record_point(s, p));
    }
    return traj;
}

}  // namespace nplab
