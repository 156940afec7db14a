#pragma once

#include <functional>

#include "nplab/theory.hpp"
#include "nplab/trajectory.hpp"

namespace nplab {

// Fixed-step explicit integration window. record_every = k emits every
// k-th step (t_start and the final step are always emitted).
struct IntegrationSpec {
    double t_start = 0.0;
    double t_end = 0.0;
    double dt = 1e-3;
    long long record_every = 1;

    void validate() const;  // throws std::invalid_argument
};

using OdeRhs =
    std::function<theory::TheoryDeriv(const theory::TheoryState&,
                                      const theory::TheoryParams&)>;

// Classical 4th-order Runge-Kutta over the reduced order-parameter state.
// Deterministic for identical arguments. On a non-finite state the
// trajectory ends early with meta.diverged set and meta.t_diverged at the
// first bad step. eps_g at each record point is
// m_outputs * (t_kk - 2 r + q) / 2.
Trajectory rk4(const OdeRhs& rhs, theory::TheoryState state0,
               const IntegrationSpec& spec, const theory::TheoryParams& p);

}  // namespace nplab
