#include "nplab/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nplab {

void ModelConfig::validate() const {
    if (n_inputs < 1) throw std::invalid_argument("n_inputs must be >= 1");
    if (n_outputs < 1) throw std::invalid_argument("n_outputs must be >= 1");
    if (!(sigma_xi_sq > 0.0))
        throw std::invalid_argument("sigma_xi_sq must be > 0");
    if (sigma_zeta_sq < 0.0)
        throw std::invalid_argument("sigma_zeta_sq must be >= 0");
    if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
}

WeightMatrix::WeightMatrix(int rows, int cols, WeightRole role)
    : rows_(rows), cols_(cols), role_(role),
      data_(static_cast<std::size_t>(rows) * cols, 0.0) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("WeightMatrix shape must be at least 1x1");
}

namespace {

WeightMatrix sample_weights(const ModelConfig& cfg, WeightRole role,
                            GaussianSampler& rng) {
    cfg.validate();
    WeightMatrix w(cfg.n_outputs, cfg.n_inputs, role);
    const double sigma = std::sqrt(1.0 / cfg.n_inputs);
    rng.fill_scaled(w.data(), sigma);
    return w;
}

void check_same_length(std::size_t a, std::size_t b, const char* what) {
    if (a != b)
        throw std::invalid_argument(std::string(what) + ": length mismatch (" +
                                    std::to_string(a) + " vs " +
                                    std::to_string(b) + ")");
}

}  // namespace

WeightMatrix sample_teacher(const ModelConfig& cfg, GaussianSampler& rng) {
    return sample_weights(cfg, WeightRole::teacher, rng);
}

WeightMatrix sample_student(const ModelConfig& cfg, GaussianSampler& rng) {
    return sample_weights(cfg, WeightRole::student, rng);
}

std::vector<double> sample_input(const ModelConfig& cfg, GaussianSampler& rng) {
    cfg.validate();
    std::vector<double> x(cfg.n_inputs);
    rng.fill(x);
    return x;
}

NoiseDraw sample_noise(const ModelConfig& cfg, GaussianSampler& xi_rng,
                       GaussianSampler& zeta_rng) {
    cfg.validate();
    NoiseDraw draw;
    draw.xi.resize(cfg.n_outputs);
    draw.zeta.assign(cfg.n_outputs, 0.0);
    xi_rng.fill_scaled(draw.xi, std::sqrt(cfg.sigma_xi_sq));
    if (cfg.rule == Rule::dnp)
        zeta_rng.fill_scaled(draw.zeta, std::sqrt(cfg.sigma_zeta_sq));
    return draw;
}

namespace detail {

double dot_sequential(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double dot_unrolled(std::span<const double> a, std::span<const double> b) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    const std::size_t n = a.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += a[i] * b[i];
    return ((s0 + s1) + (s2 + s3)) + tail;
}

}  // namespace detail

void forward_into(const WeightMatrix& w, std::span<const double> x,
                  std::span<double> out) {
    check_same_length(x.size(), static_cast<std::size_t>(w.cols()), "forward");
    check_same_length(out.size(), static_cast<std::size_t>(w.rows()), "forward");
    for (int k = 0; k < w.rows(); ++k)
        out[k] = detail::dot_unrolled(w.row(k), x);
}

std::vector<double> forward(const WeightMatrix& w, std::span<const double> x) {
    std::vector<double> y(w.rows());
    forward_into(w, x, y);
    return y;
}

double squared_error(std::span<const double> d, std::span<const double> y) {
    check_same_length(d.size(), y.size(), "squared_error");
    double acc = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        const double e = d[k] - y[k];
        acc += e * e;
    }
    return 0.5 * acc;
}

double perturbed_error(std::span<const double> d, std::span<const double> y,
                       std::span<const double> noise) {
    check_same_length(d.size(), y.size(), "perturbed_error");
    check_same_length(d.size(), noise.size(), "perturbed_error");
    double acc = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        const double e = d[k] - y[k] - noise[k];
        acc += e * e;
    }
    return 0.5 * acc;
}

}  // namespace nplab
