#pragma once

#include <span>
#include <vector>

#include "nplab/rng.hpp"

namespace nplab {

enum class Rule { snp, dnp };

enum class WeightRole { teacher, student };

// Static description of one teacher-student system.
struct ModelConfig {
    int n_inputs = 0;            // N
    int n_outputs = 0;           // M
    double sigma_xi_sq = 0.0;    // perturbation-noise variance
    double sigma_zeta_sq = 0.0;  // baseline-noise variance (dnp only)
    double eta = 0.0;            // learning step size
    Rule rule = Rule::dnp;

    // Throws std::invalid_argument on a bad field. eta = 0 is allowed
    // (a frozen run); sigma_xi_sq must be strictly positive because every
    // update divides by it.
    void validate() const;

    double gamma() const {
        return rule == Rule::snp ? 0.0 : sigma_zeta_sq / sigma_xi_sq;
    }
};

// Dense row-major M x N weights; row k is the weight vector of output k.
class WeightMatrix {
public:
    WeightMatrix(int rows, int cols, WeightRole role);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    WeightRole role() const { return role_; }

    std::span<double> row(int k) { return {data_.data() + static_cast<std::size_t>(k) * cols_, static_cast<std::size_t>(cols_)}; }
    std::span<const double> row(int k) const { return {data_.data() + static_cast<std::size_t>(k) * cols_, static_cast<std::size_t>(cols_)}; }

    double& at(int k, int j) { return data_[static_cast<std::size_t>(k) * cols_ + j]; }
    double at(int k, int j) const { return data_[static_cast<std::size_t>(k) * cols_ + j]; }

    std::span<const double> data() const { return data_; }
    std::span<double> data() { return data_; }

    bool same_shape(const WeightMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    int rows_;
    int cols_;
    WeightRole role_;
    std::vector<double> data_;
};

// One step's worth of output noise. xi and zeta must come from
// independent streams.
struct NoiseDraw {
    std::vector<double> xi;
    std::vector<double> zeta;
};

// Weights with i.i.d. N(0, 1/N) elements, so rows have unit norm up to
// O(N^{-1/2}).
WeightMatrix sample_teacher(const ModelConfig& cfg, GaussianSampler& rng);
WeightMatrix sample_student(const ModelConfig& cfg, GaussianSampler& rng);

// Fresh input, i.i.d. N(0, 1).
std::vector<double> sample_input(const ModelConfig& cfg, GaussianSampler& rng);

// xi ~ N(0, sigma_xi_sq), zeta ~ N(0, sigma_zeta_sq); zeta is all zeros
// under the snp rule.
NoiseDraw sample_noise(const ModelConfig& cfg, GaussianSampler& xi_rng,
                       GaussianSampler& zeta_rng);

// y_k = w_k . x
std::vector<double> forward(const WeightMatrix& w, std::span<const double> x);
void forward_into(const WeightMatrix& w, std::span<const double> x,
                  std::span<double> out);

// (1/2) sum_k (d_k - y_k)^2
double squared_error(std::span<const double> d, std::span<const double> y);

// (1/2) sum_k (d_k - y_k - noise_k)^2
double perturbed_error(std::span<const double> d, std::span<const double> y,
                       std::span<const double> noise);

namespace detail {

// Fixed-order dot products. The sequential form is the reference used for
// overlap measurements; the unrolled form (four independent lanes, lanes
// combined last) is used in per-step forwards where latency matters. Both
// are deterministic for a given input.
double dot_sequential(std::span<const double> a, std::span<const double> b);
double dot_unrolled(std::span<const double> a, std::span<const double> b);

}  // namespace detail

}  // namespace nplab
