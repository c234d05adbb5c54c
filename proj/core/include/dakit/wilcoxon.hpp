#pragma once

#include <span>
#include <string>

namespace dakit {

struct SignificanceResult {
    double w_statistic = 0.0;  // sum of ranks of positive differences
    int n_effective = 0;       // pairs with non-zero difference
    double p_value = 1.0;      // two-sided
    bool significant = false;  // p < 0.05
    enum class Method { Exact, NormalApprox } method = Method::Exact;
};

std::string to_string(SignificanceResult::Method m);

// Wilcoxon signed-rank test on paired samples (typically per-fold
// accuracies). Zero differences are dropped; absolute differences get
// average ranks on ties. The p-value is exact (full sign-pattern
// enumeration) for up to 12 effective pairs, and a tie-corrected normal
// approximation with continuity correction beyond that. All differences
// zero yields p = 1. Inputs must be the same length, >= 2.
SignificanceResult wilcoxon(std::span<const double> a, std::span<const double> b);

}  // namespace dakit
