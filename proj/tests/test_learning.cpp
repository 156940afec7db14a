#include <doctest.h>

#include <cmath>
#include <vector>

#include "nplab/learning.hpp"

using namespace nplab;

namespace {

ModelConfig make_config(int n, int m, Rule rule = Rule::dnp) {
    ModelConfig cfg;
    cfg.n_inputs = n;
    cfg.n_outputs = m;
    cfg.sigma_xi_sq = 0.04;
    cfg.sigma_zeta_sq = 0.02;
    cfg.eta = 0.3;
    cfg.rule = rule;
    return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("learning");

TEST_CASE("zero perturbation changes nothing") {
    const ModelConfig cfg = make_config(6, 2, Rule::snp);
    GaussianSampler rng(11);
    const WeightMatrix teacher = sample_teacher(cfg, rng);
    const WeightMatrix student = sample_student(cfg, rng);
    const std::vector<double> x = sample_input(cfg, rng);
    const std::vector<double> xi(2, 0.0);

    const auto [next, record] = snp_step(student, teacher, x, xi, cfg);
    CHECK(record.error_diff == 0.0);
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 6; ++j) CHECK(next.at(k, j) == student.at(k, j));
}

TEST_CASE("perfect student moves against the perturbation direction") {
    // With student == teacher the baseline error vanishes and the
    // perturbed error is (1/2) xi^2 > 0, so every weight moves opposite
    // to the sign of xi_k x_j. Hand-evaluated for M = 1, N = 2.
    ModelConfig cfg = make_config(2, 1, Rule::snp);
    cfg.eta = 0.5;
    cfg.sigma_xi_sq = 0.25;
    WeightMatrix teacher(1, 2, WeightRole::teacher);
    teacher.at(0, 0) = 0.3;
    teacher.at(0, 1) = -0.7;
    const WeightMatrix student = teacher;
    const std::vector<double> x = {1.0, -2.0};
    const std::vector<double> xi = {0.5};

    const auto [next, record] = snp_step(student, teacher, x, xi, cfg);
    CHECK(record.e_plain == 0.0);
    CHECK(record.e_perturbed == doctest::Approx(0.125).epsilon(1e-14));
    // delta = -(0.125/0.25)*0.5 = -0.25; dw_j = (eta/N) delta x_j
    CHECK(record.delta[0] == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(next.at(0, 0) ==
          doctest::Approx(0.3 + 0.25 * (-0.25) * 1.0).epsilon(1e-14));
    CHECK(next.at(0, 1) ==
          doctest::Approx(-0.7 + 0.25 * (-0.25) * (-2.0)).epsilon(1e-14));
}

TEST_CASE("snp step matches a scalar-loop oracle") {
    const ModelConfig cfg = make_config(4, 2, Rule::snp);
    GaussianSampler rng(13);
    const WeightMatrix teacher = sample_teacher(cfg, rng);
    const WeightMatrix student = sample_student(cfg, rng);
    const std::vector<double> x = sample_input(cfg, rng);
    std::vector<double> xi = {0.11, -0.07};

    const auto [next, record] = snp_step(student, teacher, x, xi, cfg);

    // Independent evaluation of the update rule, element by element.
    std::vector<double> d(2), y(2);
    for (int k = 0; k < 2; ++k) {
        double dk = 0.0, yk = 0.0;
        for (int j = 0; j < 4; ++j) {
            dk += teacher.at(k, j) * x[j];
            yk += student.at(k, j) * x[j];
        }
        d[k] = dk;
        y[k] = yk;
    }
    double e = 0.0, e_xi = 0.0;
    for (int k = 0; k < 2; ++k) {
        e += 0.5 * (d[k] - y[k]) * (d[k] - y[k]);
        e_xi += 0.5 * (d[k] - y[k] - xi[k]) * (d[k] - y[k] - xi[k]);
    }
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 4; ++j) {
            const double expect =
                student.at(k, j) -
                cfg.eta / 4.0 / cfg.sigma_xi_sq * (e_xi - e) * xi[k] * x[j];
            CHECK(next.at(k, j) == doctest::Approx(expect).epsilon(1e-13));
        }
}

TEST_CASE("dnp with zero baseline noise is exactly snp") {
    const ModelConfig cfg = make_config(5, 3);
    GaussianSampler rng(17);
    const WeightMatrix teacher = sample_teacher(cfg, rng);
    const WeightMatrix student = sample_student(cfg, rng);
    const std::vector<double> x = sample_input(cfg, rng);
    std::vector<double> xi = {0.2, -0.1, 0.05};
    const std::vector<double> zeta(3, 0.0);

    const auto [a, ra] = snp_step(student, teacher, x, xi, cfg);
    const auto [b, rb] = dnp_step(student, teacher, x, xi, zeta, cfg);
    CHECK(ra.error_diff == rb.error_diff);
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 5; ++j) CHECK(a.at(k, j) == b.at(k, j));
}

TEST_CASE("equal perturbation and baseline noise cancel") {
    const ModelConfig cfg = make_config(5, 2);
    GaussianSampler rng(19);
    const WeightMatrix teacher = sample_teacher(cfg, rng);
    const WeightMatrix student = sample_student(cfg, rng);
    const std::vector<double> x = sample_input(cfg, rng);
    std::vector<double> xi = {0.2, -0.3};

    const auto [next, record] = dnp_step(student, teacher, x, xi, xi, cfg);
    CHECK(record.error_diff == 0.0);
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 5; ++j) CHECK(next.at(k, j) == student.at(k, j));
}

TEST_CASE("dnp step matches a scalar-loop oracle") {
    const ModelConfig cfg = make_config(4, 2);
    GaussianSampler rng(23);
    const WeightMatrix teacher = sample_teacher(cfg, rng);
    const WeightMatrix student = sample_student(cfg, rng);
    const std::vector<double> x = sample_input(cfg, rng);
    std::vector<double> xi = {0.11, -0.07};
    std::vector<double> zeta = {-0.02, 0.09};

    const auto [next, record] = dnp_step(student, teacher, x, xi, zeta, cfg);

    std::vector<double> d = forward(teacher, x);
    std::vector<double> y = forward(student, x);
    double e_zeta = 0.0, e_xi = 0.0;
    for (int k = 0; k < 2; ++k) {
        e_zeta += 0.5 * (d[k] - y[k] - zeta[k]) * (d[k] - y[k] - zeta[k]);
        e_xi += 0.5 * (d[k] - y[k] - xi[k]) * (d[k] - y[k] - xi[k]);
    }
    for (int k = 0; k < 2; ++k) {
        CHECK(record.delta[k] ==
              doctest::Approx(-(e_xi - e_zeta) * xi[k] / cfg.sigma_xi_sq)
                  .epsilon(1e-13));
        for (int j = 0; j < 4; ++j) {
            const double expect =
                student.at(k, j) -
                cfg.eta / 4.0 / cfg.sigma_xi_sq * (e_xi - e_zeta) * xi[k] * x[j];
            CHECK(next.at(k, j) == doctest::Approx(expect).epsilon(1e-13));
        }
    }
}

TEST_CASE("delta_expanded trivial cases") {
    // all-zero perturbation kills every term
    std::vector<double> d = {0.4, -1.0, 2.0}, y = {0.1, 0.0, -0.5};
    std::vector<double> xi(3, 0.0), zeta = {0.1, -0.2, 0.3};
    for (double v : delta_expanded(d, y, xi, zeta, 0.04)) CHECK(v == 0.0);

    // M = 1, d = y, zeta = 0: only the cubic term survives
    std::vector<double> d1 = {0.7}, y1 = {0.7}, xi1 = {0.3}, z1 = {0.0};
    const double sigma_sq = 0.09;
    const auto delta = delta_expanded(d1, y1, xi1, z1, sigma_sq);
    CHECK(delta[0] ==
          doctest::Approx(-0.3 * 0.3 * 0.3 / (2.0 * sigma_sq)).epsilon(1e-14));
}

TEST_CASE("delta_expanded equals the factored form") {
    GaussianSampler rng(29);
    for (int trial = 0; trial < 2000; ++trial) {
        const int m = 3;
        std::vector<double> d(m), y(m), xi(m), zeta(m);
        rng.fill(d);
        rng.fill(y);
        rng.fill(xi);
        rng.fill(zeta);
        const double sigma_sq = 0.01 + 0.5 * std::abs(rng.next());

        const auto expanded = delta_expanded(d, y, xi, zeta, sigma_sq);
        const double e_xi = perturbed_error(d, y, xi);
        const double e_zeta = perturbed_error(d, y, zeta);
        for (int k = 0; k < m; ++k) {
            const double factored = -(e_xi - e_zeta) * xi[k] / sigma_sq;
            const double scale = std::max(std::abs(factored),
                                          (e_xi + e_zeta) * std::abs(xi[k]) / sigma_sq);
            CHECK(std::abs(expanded[k] - factored) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("mean delta follows the output error") {
    // Averaged over the noise, delta_k estimates d_k - y_k.
    const double sigma_xi_sq = 0.04, sigma_zeta_sq = 0.04;
    const std::vector<double> d = {0.8, -0.2}, y = {0.3, 0.1};
    GaussianSampler xi_rng(31), zeta_rng(37);
    const int n = 200000;
    std::vector<double> sum(2, 0.0), sum2(2, 0.0);
    std::vector<double> xi(2), zeta(2);
    for (int i = 0; i < n; ++i) {
        xi_rng.fill_scaled(xi, std::sqrt(sigma_xi_sq));
        zeta_rng.fill_scaled(zeta, std::sqrt(sigma_zeta_sq));
        const double e_xi = perturbed_error(d, y, xi);
        const double e_zeta = perturbed_error(d, y, zeta);
        for (int k = 0; k < 2; ++k) {
            const double delta = -(e_xi - e_zeta) * xi[k] / sigma_xi_sq;
            sum[k] += delta;
            sum2[k] += delta * delta;
        }
    }
    for (int k = 0; k < 2; ++k) {
        const double mean = sum[k] / n;
        const double var = sum2[k] / n - mean * mean;
        const double stderr_mean = std::sqrt(var / n);
        CHECK(std::abs(mean - (d[k] - y[k])) <= 3.0 * stderr_mean);
    }
}

TEST_SUITE_END();
