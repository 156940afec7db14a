#pragma once

namespace nplab::theory {

// Parameters of the reduced order-parameter dynamics. gamma is the ratio
// of baseline-noise variance to perturbation-noise variance; gamma = 0
// recovers the perturbation-only (snp) dynamics exactly.
struct TheoryParams {
    int m_outputs = 1;          // M
    double eta = 0.1;           // learning step size
    double gamma = 0.0;         // sigma_zeta^2 / sigma_xi^2
    double sigma_xi_sq = 0.01;  // perturbation-noise variance
    double t_kk = 1.0;          // teacher self-overlap
    double t_kl = 0.0;          // teacher cross-overlap

    void validate() const;  // throws std::invalid_argument
};

// Reduced state under the homogeneous ansatz: one diagonal pair (q, r)
// standing for all outputs, one cross pair (q_kl, r_kl) standing for all
// k != l; r_kl is the common (or averaged) value of R_kl and R_lk.
struct TheoryState {
    double q = 1.0;
    double r = 0.0;
    double q_kl = 0.0;
    double r_kl = 0.0;
    double t = 0.0;  // learning time (iterations per input dimension)
};

struct TheoryDeriv {
    double dq = 0.0;
    double dr = 0.0;
    double dq_kl = 0.0;
    double dr_kl = 0.0;
};

// Convergence summary of the closed-form generalization error.
struct ClosedFormSolution {
    double decay_rate = 0.0;    // 2*eta - (M(1+gamma)+2)*eta^2
    double residual = 0.0;      // NaN when unstable
    double eps0 = 0.0;          // per-output eps_g at t = 0
    bool stable = false;        // decay_rate > 0
    double eta_critical = 0.0;  // 2 / (M(1+gamma)+2)
};

// --- dynamics -------------------------------------------------------------

TheoryDeriv ode_rhs_dnp(const TheoryState& s, const TheoryParams& p);
TheoryDeriv ode_rhs_snp(const TheoryState& s, const TheoryParams& p);

double decay_rate(const TheoryParams& p);
double eta_critical(const TheoryParams& p);

// --- closed-form solutions (t_kk = 1 convention) ---------------------------

double closed_r(double t, double r0, double eta);

// Throws std::domain_error for eta at or beyond the critical step size,
// where the constant term of the solution diverges or turns negative.
double closed_q(double t, double q0, double r0, const TheoryParams& p);

double closed_r_kl(double t, double r_kl0, double t_kl, double eta);
double closed_q_kl(double t, double q_kl0, double r_kl0, double r_lk0,
                   double t_kl, double eta);

// eps0 is the per-output generalization error at t = 0,
// (1 - 2 r0 + q0) / 2. Total over all outputs. Never throws: past the
// critical step size it simply grows, which classify_stability flags.
double eps_g_closed(double t, double eps0, const TheoryParams& p);

// Asymptotic per-output error. Throws std::domain_error at or beyond the
// critical step size.
double residual_error(const TheoryParams& p);

// --- optimal hyperparameters -----------------------------------------------

// Step size maximizing the decay rate: 1 / (M(1+gamma)+2).
double eta_opt(int m_outputs, double gamma);

// Residual error evaluated at eta_opt.
double re_at_eta_opt(int m_outputs, double gamma, double sigma_xi_sq);

// Noise ratio minimizing re_at_eta_opt at fixed M.
double gamma_at_eta_opt(int m_outputs);

// Noise ratio minimizing the residual error at fixed (M, eta). Requires
// 0 < eta < 2/(M+2) so that a stable gamma >= 0 exists.
double gamma_opt(int m_outputs, double eta);

// q0/r0 default to the cold-start convention (q0 = 1, r0 = 0).
ClosedFormSolution classify_stability(const TheoryParams& p, double q0 = 1.0,
                                      double r0 = 0.0);

// --- perturbation-only (snp) counterparts ----------------------------------

double decay_rate_snp(int m_outputs, double eta);
double residual_error_snp(int m_outputs, double eta, double sigma_xi_sq);
double eps_g_closed_snp(double t, double eps0, int m_outputs, double eta,
                        double sigma_xi_sq);
double eta_opt_snp(int m_outputs);

}  // namespace nplab::theory
