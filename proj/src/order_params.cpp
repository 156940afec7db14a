#include "nplab/order_params.hpp"

#include <cmath>
#include <stdexcept>

namespace nplab {

OrderParameters measure(const WeightMatrix& teacher, const WeightMatrix& student) {
    if (!teacher.same_shape(student))
        throw std::invalid_argument("measure: teacher/student shape mismatch");
    const int m = teacher.rows();
    OrderParameters p;
    p.m = m;
    p.q.resize(static_cast<std::size_t>(m) * m);
    p.r.resize(static_cast<std::size_t>(m) * m);
    p.t.resize(static_cast<std::size_t>(m) * m);
    for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) {
            const std::size_t idx = static_cast<std::size_t>(k) * m + l;
            p.q[idx] = detail::dot_sequential(student.row(k), student.row(l));
            p.r[idx] = detail::dot_sequential(teacher.row(k), student.row(l));
            p.t[idx] = detail::dot_sequential(teacher.row(k), teacher.row(l));
        }
    }
    return p;
}

double eps_g_from_params(const OrderParameters& p) {
    double acc = 0.0;
    for (int k = 0; k < p.m; ++k)
        acc += 0.5 * (p.t_at(k, k) - 2.0 * p.r_at(k, k) + p.q_at(k, k));
    return acc;
}

MonteCarloEstimate eps_g_monte_carlo(const WeightMatrix& teacher,
                                     const WeightMatrix& student, int n_test,
                                     GaussianSampler& rng) {
    if (!teacher.same_shape(student))
        throw std::invalid_argument("eps_g_monte_carlo: shape mismatch");
    if (n_test < 2)
        throw std::invalid_argument("eps_g_monte_carlo: n_test must be >= 2");

    std::vector<double> x(teacher.cols());
    std::vector<double> d(teacher.rows());
    std::vector<double> y(teacher.rows());

    // Welford accumulation: stable and exactly zero for identical networks.
    double mean = 0.0;
    double m2 = 0.0;
    for (int i = 0; i < n_test; ++i) {
        rng.fill(x);
        forward_into(teacher, x, d);
        forward_into(student, x, y);
        const double e = squared_error(d, y);
        const double delta = e - mean;
        mean += delta / (i + 1);
        m2 += delta * (e - mean);
    }
    MonteCarloEstimate est;
    est.mean = mean;
    est.stderr_of_mean = std::sqrt(m2 / (n_test - 1) / n_test);
    return est;
}

}  // namespace nplab
