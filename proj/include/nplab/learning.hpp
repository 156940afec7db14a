#pragma once

#include <span>
#include <utility>
#include <vector>

#include "nplab/model.hpp"

namespace nplab {

// Everything observable about one update besides the weights themselves.
// delta_k always satisfies delta_k = -(error_diff / sigma_xi_sq) * xi_k.
struct UpdateRecord {
    std::vector<double> delta;
    double error_diff = 0.0;   // e_perturbed - e_plain
    double e_plain = 0.0;      // E (snp) or E_zeta (dnp)
    double e_perturbed = 0.0;  // E_xi
};

// In-place update shared by both rules: the baseline error is
// squared_error(d, y) when zeta is empty, perturbed_error(d, y, zeta)
// otherwise. d and y must already be the forward passes for x.
// The arithmetic order is fixed: error difference first, then the
// per-output scale, then the rank-one weight change.
void step_in_place(WeightMatrix& student, std::span<const double> d,
                   std::span<const double> y, std::span<const double> x,
                   std::span<const double> xi, std::span<const double> zeta,
                   const ModelConfig& cfg, UpdateRecord& record);

// Value-semantics steps: return the updated matrix and the record.
std::pair<WeightMatrix, UpdateRecord> snp_step(const WeightMatrix& student,
                                               const WeightMatrix& teacher,
                                               std::span<const double> x,
                                               std::span<const double> xi,
                                               const ModelConfig& cfg);

std::pair<WeightMatrix, UpdateRecord> dnp_step(const WeightMatrix& student,
                                               const WeightMatrix& teacher,
                                               std::span<const double> x,
                                               std::span<const double> xi,
                                               std::span<const double> zeta,
                                               const ModelConfig& cfg);

// delta_k written out term by term (the expanded form of the error
// difference), kept as an independent route for validating the factored
// rule above. Algebraically identical to
//   -(perturbed_error(d,y,xi) - perturbed_error(d,y,zeta)) * xi_k / sigma_xi_sq.
std::vector<double> delta_expanded(std::span<const double> d,
                                   std::span<const double> y,
                                   std::span<const double> xi,
                                   std::span<const double> zeta,
                                   double sigma_xi_sq);

}  // namespace nplab
