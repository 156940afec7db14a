#include "nplab/learning.hpp"

#include <stdexcept>

namespace nplab {

void step_in_place(WeightMatrix& student, std::span<const double> d,
                   std::span<const double> y, std::span<const double> x,
                   std::span<const double> xi, std::span<const double> zeta,
                   const ModelConfig& cfg, UpdateRecord& record) {
    const int m = student.rows();
    const int n = student.cols();
    if (d.size() != static_cast<std::size_t>(m) ||
        y.size() != static_cast<std::size_t>(m) ||
        xi.size() != static_cast<std::size_t>(m) ||
        x.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("step: dimension mismatch");
    if (!zeta.empty() && zeta.size() != static_cast<std::size_t>(m))
        throw std::invalid_argument("step: zeta length mismatch");

    record.e_plain = zeta.empty() ? squared_error(d, y)
                                  : perturbed_error(d, y, zeta);
    record.e_perturbed = perturbed_error(d, y, xi);
    record.error_diff = record.e_perturbed - record.e_plain;

    record.delta.resize(m);
    const double step_scale = cfg.eta / n;
    for (int k = 0; k < m; ++k) {
        record.delta[k] = -(record.error_diff * xi[k]) / cfg.sigma_xi_sq;
        const double ck = step_scale * record.delta[k];
        double* wk = student.row(k).data();
        for (int j = 0; j < n; ++j) wk[j] += ck * x[j];
    }
}

std::pair<WeightMatrix, UpdateRecord> snp_step(const WeightMatrix& student,
                                               const WeightMatrix& teacher,
                                               std::span<const double> x,
                                               std::span<const double> xi,
                                               const ModelConfig& cfg) {
    if (!student.same_shape(teacher))
        throw std::invalid_argument("snp_step: teacher/student shape mismatch");
    WeightMatrix next = student;
    UpdateRecord record;
    const std::vector<double> d = forward(teacher, x);
    const std::vector<double> y = forward(student, x);
    step_in_place(next, d, y, x, xi, {}, cfg, record);
    return {std::move(next), std::move(record)};
}

std::pair<WeightMatrix, UpdateRecord> dnp_step(const WeightMatrix& student,
                                               const WeightMatrix& teacher,
                                               std::span<const double> x,
                                               std::span<const double> xi,
                                               std::span<const double> zeta,
                                               const ModelConfig& cfg) {
    if (!student.same_shape(teacher))
        throw std::invalid_argument("dnp_step: teacher/student shape mismatch");
    WeightMatrix next = student;
    UpdateRecord record;
    const std::vector<double> d = forward(teacher, x);
    const std::vector<double> y = forward(student, x);
    step_in_place(next, d, y, x, xi, zeta, cfg, record);
    return {std::move(next), std::move(record)};
}

std::vector<double> delta_expanded(std::span<const double> d,
                                   std::span<const double> y,
                                   std::span<const double> xi,
                                   std::span<const double> zeta,
                                   double sigma_xi_sq) {
    const std::size_t m = d.size();
    if (y.size() != m || xi.size() != m || zeta.size() != m)
        throw std::invalid_argument("delta_expanded: length mismatch");
    if (!(sigma_xi_sq > 0.0))
        throw std::invalid_argument("delta_expanded: sigma_xi_sq must be > 0");

    std::vector<double> delta(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double ek = d[k] - y[k];
        double acc = 2.0 * (xi[k] * xi[k] - xi[k] * zeta[k]) * ek -
                     xi[k] * xi[k] * xi[k] + xi[k] * zeta[k] * zeta[k];
        for (std::size_t l = 0; l < m; ++l) {
            if (l == k) continue;
            const double el = d[l] - y[l];
            acc += 2.0 * (xi[k] * xi[l] - xi[k] * zeta[l]) * el -
                   xi[k] * xi[l] * xi[l] + xi[k] * zeta[l] * zeta[l];
        }
        delta[k] = acc / (2.0 * sigma_xi_sq);
    }
    return delta;
}

}  // namespace nplab
