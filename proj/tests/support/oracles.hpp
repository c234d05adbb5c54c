#pragma once

// Independent reference implementations used to check the production code.
// These deliberately take the slow, obviously-correct route and share no
// code with the solvers they verify.

#include <cstdint>
#include <span>
#include <vector>

#include "dakit/common.hpp"
#include "dakit/features.hpp"

namespace dakit::testing {

// Solves the dual of the L2-regularized L1-loss SVM by plain projected
// gradient descent on a dense Gram matrix, run until the largest projected
// gradient violation falls below `tol`, and returns the primal weights
// (n_features+1 with the bias slot last). Only suitable for tiny problems.
std::vector<double> dual_oracle_weights(std::span<const SparseVector> samples,
                                        std::span<const std::int8_t> targets,
                                        std::uint32_t n_features, double cost, double bias,
                                        double tol = 1e-8);

struct RandomProblem {
    std::vector<SparseVector> samples;
    std::vector<std::int8_t> targets;
    std::uint32_t n_features = 0;
    double cost = 0.1;
};

// Small random solver problem: up to 12 samples over up to 5 features,
// cost drawn from {0.1, 1}.
RandomProblem random_problem(Rng& rng);

// Exact two-sided Wilcoxon signed-rank p-value by recursive sign-pattern
// enumeration. Independent of the library implementation.
double wilcoxon_exact_oracle(std::span<const double> a, std::span<const double> b);

}  // namespace dakit::testing
