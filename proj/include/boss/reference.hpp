#pragma once

#include "boss/dof.hpp"
#include "boss/paths.hpp"

namespace boss {
namespace reference {

// Plain serial implementations of the OpenMP kernels, kept as ground truth
// for the parallel variants and as the baseline of the benchmark target.

// Straight per-replication accumulation (no block partials). Agrees with the
// parallel estimator up to floating-point summation order.
DfProfile edf_monte_carlo(const PathFitter& fit, const Vector& mu, double sigma, int reps,
                          std::uint64_t seed);

// Single depth-first enumeration over all subsets. Visits supports in the
// same order as the parallel version reduces them, so results match exactly.
SolutionPath bs_exhaustive(const Dataset& data, int k_max);

}  // namespace reference
}  // namespace boss
