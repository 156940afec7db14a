#include "nplab/theory.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace nplab::theory {

namespace {

// M(1+gamma)+2, the coefficient shared by the decay rate, the residual
// error and the critical step size.
double stiffness(int m, double gamma) { return m * (1.0 + gamma) + 2.0; }

// (M+2)(M(1-gamma)^2+4), the noise-injection coefficient.
double noise_coeff(int m, double gamma) {
    const double g1 = 1.0 - gamma;
    return (m + 2.0) * (m * g1 * g1 + 4.0);
}

// Residual error without the stability guard; used by the closed-form
// generalization error, which stays evaluable in the unstable regime.
double residual_raw(const TheoryParams& p) {
    return noise_coeff(p.m_outputs, p.gamma) * p.eta * p.sigma_xi_sq /
           (8.0 * (2.0 - stiffness(p.m_outputs, p.gamma) * p.eta));
}

void require_stable(const TheoryParams& p, const char* who) {
    const double crit = eta_critical(p);
    if (p.eta >= crit)
        throw std::domain_error(std::string(who) + ": eta = " +
                                std::to_string(p.eta) +
                                " is at or beyond the critical step size " +
                                std::to_string(crit));
}

}  // namespace

void TheoryParams::validate() const {
    if (m_outputs < 1)
        throw std::invalid_argument("m_outputs must be >= 1");
    if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
    if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
    if (!(sigma_xi_sq > 0.0))
        throw std::invalid_argument("sigma_xi_sq must be > 0");
}

TheoryDeriv ode_rhs_dnp(const TheoryState& s, const TheoryParams& p) {
    const double eta = p.eta;
    const double eta2 = eta * eta;
    const double diag_err = p.t_kk - 2.0 * s.r + s.q;
    TheoryDeriv d;
    d.dq = 2.0 * eta * (s.r - s.q) +
           eta2 * (stiffness(p.m_outputs, p.gamma) * diag_err +
                   0.25 * p.sigma_xi_sq * noise_coeff(p.m_outputs, p.gamma));
    d.dr = eta * (p.t_kk - s.r);
    d.dq_kl = eta * (2.0 * s.r_kl - 2.0 * s.q_kl) +
              2.0 * eta2 * (p.t_kl - 2.0 * s.r_kl + s.q_kl);
    d.dr_kl = eta * (p.t_kl - s.r_kl);
    return d;
}

TheoryDeriv ode_rhs_snp(const TheoryState& s, const TheoryParams& p) {
    const double eta = p.eta;
    const double eta2 = eta * eta;
    const double diag_err = p.t_kk - 2.0 * s.r + s.q;
    const double m = p.m_outputs;
    TheoryDeriv d;
    d.dq = 2.0 * eta * (s.r - s.q) +
           eta2 * ((m + 2.0) * diag_err +
                   0.25 * p.sigma_xi_sq * ((m + 2.0) * (m + 4.0)));
    d.dr = eta * (p.t_kk - s.r);
    d.dq_kl = eta * (2.0 * s.r_kl - 2.0 * s.q_kl) +
              2.0 * eta2 * (p.t_kl - 2.0 * s.r_kl + s.q_kl);
    d.dr_kl = eta * (p.t_kl - s.r_kl);
    return d;
}

double decay_rate(const TheoryParams& p) {
    return 2.0 * p.eta - stiffness(p.m_outputs, p.gamma) * p.eta * p.eta;
}

double eta_critical(const TheoryParams& p) {
    return 2.0 / stiffness(p.m_outputs, p.gamma);
}

double closed_r(double t, double r0, double eta) {
    return 1.0 - (1.0 - r0) * std::exp(-eta * t);
}

double closed_q(double t, double q0, double r0, const TheoryParams& p) {
    require_stable(p, "closed_q");
    const double a = 2.0 * residual_raw(p);
    const double k = (1.0 - 2.0 * r0 + q0) - a;
    // expm1 form of the three-exponential solution; exact at t = 0.
    return q0 + k * std::expm1(-decay_rate(p) * t) -
           2.0 * (1.0 - r0) * std::expm1(-p.eta * t);
}

double closed_r_kl(double t, double r_kl0, double t_kl, double eta) {
    return t_kl - (t_kl - r_kl0) * std::exp(-eta * t);
}

double closed_q_kl(double t, double q_kl0, double r_kl0, double r_lk0,
                   double t_kl, double eta) {
    const double k = t_kl - r_kl0 - r_lk0 + q_kl0;
    const double s0 = 2.0 * t_kl - r_kl0 - r_lk0;
    return q_kl0 + k * std::expm1(-2.0 * (eta - eta * eta) * t) -
           s0 * std::expm1(-eta * t);
}

double eps_g_closed(double t, double eps0, const TheoryParams& p) {
    const double re = residual_raw(p);
    return p.m_outputs * ((eps0 - re) * std::exp(-decay_rate(p) * t) + re);
}

double residual_error(const TheoryParams& p) {
    require_stable(p, "residual_error");
    return residual_raw(p);
}

double eta_opt(int m_outputs, double gamma) {
    return 1.0 / stiffness(m_outputs, gamma);
}

double re_at_eta_opt(int m_outputs, double gamma, double sigma_xi_sq) {
    return noise_coeff(m_outputs, gamma) * sigma_xi_sq /
           (8.0 * stiffness(m_outputs, gamma));
}

double gamma_at_eta_opt(int m_outputs) {
    const double m = m_outputs;
    return (2.0 * std::sqrt(m * m + 3.0 * m + 1.0) - (m + 2.0)) / m;
}

double gamma_opt(int m_outputs, double eta) {
    const double m = m_outputs;
    if (!(eta > 0.0) || eta >= 2.0 / (m + 2.0))
        throw std::domain_error(
            "gamma_opt: eta must lie in (0, 2/(M+2)) for a stable gamma >= 0 "
            "to exist");
    const double disc =
        (m * m + 3.0 * m + 1.0) * eta * eta - 2.0 * (m + 1.0) * eta + 1.0;
    if (disc < 0.0)
        throw std::domain_error("gamma_opt: negative discriminant");
    return (2.0 - (2.0 + m) * eta - 2.0 * std::sqrt(disc)) / (m * eta);
}

ClosedFormSolution classify_stability(const TheoryParams& p, double q0,
                                      double r0) {
    p.validate();
    ClosedFormSolution sol;
    sol.decay_rate = decay_rate(p);
    sol.eta_critical = eta_critical(p);
    sol.stable = sol.decay_rate > 0.0;
    sol.residual = sol.stable ? residual_raw(p)
                              : std::numeric_limits<double>::quiet_NaN();
    sol.eps0 = 0.5 * (p.t_kk - 2.0 * r0 + q0);
    return sol;
}

double decay_rate_snp(int m_outputs, double eta) {
    return 2.0 * eta - (m_outputs + 2.0) * eta * eta;
}

double residual_error_snp(int m_outputs, double eta, double sigma_xi_sq) {
    const double m = m_outputs;
    if (eta >= 2.0 / (m + 2.0))
        throw std::domain_error(
            "residual_error_snp: eta at or beyond the critical step size " +
            std::to_string(2.0 / (m + 2.0)));
    return (m + 2.0) * (m + 4.0) * eta * sigma_xi_sq /
           (8.0 * (2.0 - (m + 2.0) * eta));
}

double eps_g_closed_snp(double t, double eps0, int m_outputs, double eta,
                        double sigma_xi_sq) {
    const double m = m_outputs;
    const double re = (m + 2.0) * (m + 4.0) * eta * sigma_xi_sq /
                      (8.0 * (2.0 - (m + 2.0) * eta));
    return m * ((eps0 - re) * std::exp(-decay_rate_snp(m_outputs, eta) * t) + re);
}

double eta_opt_snp(int m_outputs) { return 1.0 / (m_outputs + 2.0); }

}  // namespace nplab::theory
