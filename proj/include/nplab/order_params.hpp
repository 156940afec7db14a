#pragma once

#include <vector>

#include "nplab/model.hpp"

namespace nplab {

// Macroscopic overlaps between the two networks' weight rows.
//   q(k,l) = w_k . w_l        (student-student)
//   r(k,l) = w*_k . w_l       (row index = teacher)
//   t(k,l) = w*_k . w*_l      (teacher-teacher)
// q and t are symmetric; r in general is not.
struct OrderParameters {
    int m = 0;
    std::vector<double> q;
    std::vector<double> r;
    std::vector<double> t;

    double q_at(int k, int l) const { return q[static_cast<std::size_t>(k) * m + l]; }
    double r_at(int k, int l) const { return r[static_cast<std::size_t>(k) * m + l]; }
    double t_at(int k, int l) const { return t[static_cast<std::size_t>(k) * m + l]; }
};

// Exact Gram-type overlaps of the current weights, accumulated in
// index-ascending order.
OrderParameters measure(const WeightMatrix& teacher, const WeightMatrix& student);

// Input-averaged squared error as a function of the overlaps alone:
// sum_k (t_kk - 2 r_kk + q_kk) / 2. Round-off may make this marginally
// negative for synthetic inputs; no clamping is applied.
double eps_g_from_params(const OrderParameters& p);

struct MonteCarloEstimate {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
};

// Empirical estimate of the same average over n_test fresh inputs.
MonteCarloEstimate eps_g_monte_carlo(const WeightMatrix& teacher,
                                     const WeightMatrix& student, int n_test,
                                     GaussianSampler& rng);

}  // namespace nplab
