#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "nplab/ode.hpp"

using namespace nplab;
using namespace nplab::theory;

namespace {

TheoryParams make_params(int m, double eta, double gamma,
                         double sigma_xi_sq = 0.01) {
    TheoryParams p;
    p.m_outputs = m;
    p.eta = eta;
    p.gamma = gamma;
    p.sigma_xi_sq = sigma_xi_sq;
    return p;
}

IntegrationSpec make_spec(double t_end, double dt, long long stride) {
    IntegrationSpec spec;
    spec.t_end = t_end;
    spec.dt = dt;
    spec.record_every = stride;
    return spec;
}

}  // namespace

TEST_SUITE_BEGIN("ode");

TEST_CASE("zero rhs yields a constant trajectory") {
    const OdeRhs rhs = [](const TheoryState&, const TheoryParams&) {
        return TheoryDeriv{};
    };
    TheoryState s0;
    s0.q = 1.3;
    s0.r = -0.2;
    const Trajectory traj = rk4(rhs, s0, make_spec(2.0, 0.01, 50), make_params(2, 0.1, 1.0));
    CHECK(traj.points.size() == 5);
    for (const TrajectoryPoint& pt : traj.points) {
        CHECK(pt.q == 1.3);
        CHECK(pt.r == -0.2);
    }
    CHECK_FALSE(traj.meta.diverged);
}

TEST_CASE("teacher-student overlap relaxation to a frozen value") {
    // dr/dt = eta (1 - r), r(0) = 0, eta = 0.1: r(10) = 1 - exp(-1).
    const TheoryParams p = make_params(1, 0.1, 1.0);
    TheoryState s0;
    s0.q = 1.0;
    s0.r = 0.0;
    const Trajectory traj =
        rk4(ode_rhs_dnp, s0, make_spec(10.0, 1e-3, 10000), p);
    CHECK(traj.points.back().t == doctest::Approx(10.0));
    CHECK(std::abs(traj.points.back().r - 0.6321205588285577) <= 1e-10);
}

TEST_CASE("fourth-order convergence against the closed form") {
    const TheoryParams p = make_params(1, 0.3, 0.8, 0.02);
    TheoryState s0;
    s0.q = 2.0;
    s0.r = -0.5;
    auto q_error = [&](double dt) {
        const Trajectory traj = rk4(ode_rhs_dnp, s0, make_spec(4.0, dt, 1 << 20), p);
        const double exact = closed_q(4.0, s0.q, s0.r, p);
        return std::abs(traj.points.back().q - exact);
    };
    const double coarse = q_error(0.2);
    const double fine = q_error(0.1);
    CHECK(coarse > 1e-12);  // far from round-off, the ratio is meaningful
    const double ratio = coarse / fine;
    CHECK(ratio > 10.0);
    CHECK(ratio < 25.0);
}

TEST_CASE("closed forms agree with integration") {
    const TheoryParams p = [] {
        TheoryParams q = make_params(1, 0.1, 1.0);
        q.t_kl = 0.0;
        return q;
    }();
    TheoryState s0;
    s0.q = 1.0;
    s0.r = 0.0;
    const Trajectory traj = rk4(ode_rhs_dnp, s0, make_spec(5.0, 1e-3, 1000), p);
    for (const TrajectoryPoint& pt : traj.points) {
        CHECK(std::abs(pt.q - closed_q(pt.t, 1.0, 0.0, p)) <= 1e-8);
        CHECK(std::abs(pt.r - closed_r(pt.t, 0.0, p.eta)) <= 1e-10);
    }
}

TEST_CASE("cross-overlap closed forms agree with integration") {
    TheoryParams p = make_params(4, 0.12, 0.5);
    p.t_kl = 0.2;
    TheoryState s0;
    s0.q = 1.0;
    s0.r = 0.0;
    s0.q_kl = 0.3;
    s0.r_kl = 0.1;
    const Trajectory traj = rk4(ode_rhs_dnp, s0, make_spec(30.0, 1e-3, 2000), p);
    for (const TrajectoryPoint& pt : traj.points) {
        CHECK(std::abs(pt.q_kl -
                       closed_q_kl(pt.t, s0.q_kl, s0.r_kl, s0.r_kl, p.t_kl,
                                   p.eta)) <= 1e-8);
        CHECK(std::abs(pt.r_kl - closed_r_kl(pt.t, s0.r_kl, p.t_kl, p.eta)) <=
              1e-10);
    }
}

TEST_CASE("asymmetric cross-overlap initial conditions") {
    // The pair (R_kl, R_lk) enters the Q_kl equation only through its sum,
    // so integrating their average reproduces the asymmetric closed form.
    const double r_kl0 = 0.15, r_lk0 = -0.05, q_kl0 = 0.2, t_kl = 0.1;
    TheoryParams p = make_params(2, 0.09, 1.2);
    p.t_kl = t_kl;
    TheoryState s0;
    s0.q = 1.0;
    s0.r = 0.0;
    s0.q_kl = q_kl0;
    s0.r_kl = 0.5 * (r_kl0 + r_lk0);
    const Trajectory traj = rk4(ode_rhs_dnp, s0, make_spec(20.0, 1e-3, 2000), p);
    for (const TrajectoryPoint& pt : traj.points)
        CHECK(std::abs(pt.q_kl - closed_q_kl(pt.t, q_kl0, r_kl0, r_lk0, t_kl,
                                             p.eta)) <= 1e-8);
}

TEST_CASE("determinism") {
    const TheoryParams p = make_params(2, 0.2, 0.3);
    TheoryState s0;
    s0.q = 1.0;
    const Trajectory a = rk4(ode_rhs_dnp, s0, make_spec(3.0, 1e-3, 100), p);
    const Trajectory b = rk4(ode_rhs_dnp, s0, make_spec(3.0, 1e-3, 100), p);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].q == b.points[i].q);
        CHECK(a.points[i].r == b.points[i].r);
    }
}

TEST_CASE("a blowing-up system is flagged, not propagated") {
    // dq/dt = q^2 escapes in finite time; overflow must end the
    // trajectory with the divergence time recorded.
    const OdeRhs rhs = [](const TheoryState& s, const TheoryParams&) {
        TheoryDeriv d;
        d.dq = s.q * s.q;
        return d;
    };
    TheoryState s0;
    s0.q = 1.0;
    const Trajectory traj = rk4(rhs, s0, make_spec(2.0, 1e-3, 100), make_params(1, 0.1, 0.0));
    CHECK(traj.meta.diverged);
    CHECK(traj.meta.t_diverged > 0.9);  // escape time of dq/dt = q^2 is t = 1
    CHECK(traj.meta.t_diverged < 1.1);
    for (const TrajectoryPoint& pt : traj.points) CHECK(std::isfinite(pt.q));
}

TEST_CASE("integration window validation") {
    IntegrationSpec bad = make_spec(0.0, 1e-3, 1);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = make_spec(1.0, 0.0, 1);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = make_spec(1.0, 1e-3, 0);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_SUITE_END();
