#include "dakit/wilcoxon.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dakit/common.hpp"

namespace dakit {

namespace {
constexpr int kExactLimit = 12;
constexpr double kAlpha = 0.05;
}  // namespace

std::string to_string(SignificanceResult::Method m) {
    return m == SignificanceResult::Method::Exact ? "exact" : "normal-approximation";
}

SignificanceResult wilcoxon(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw ConfigError("wilcoxon: paired samples must have equal length");
    if (a.size() < 2) throw ConfigError("wilcoxon: need at least 2 pairs");

    std::vector<double> diffs;
    diffs.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        if (d != 0.0) diffs.push_back(d);
    }

    SignificanceResult result;
    result.n_effective = static_cast<int>(diffs.size());
    if (diffs.empty()) {
        result.p_value = 1.0;
        result.significant = false;
        return result;
    }

    // Rank |d| ascending with average ranks on ties.
    const std::size_t n = diffs.size();
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
        return std::abs(diffs[x]) < std::abs(diffs[y]);
    });
    std::vector<double> ranks(n, 0.0);
    std::vector<std::size_t> tie_sizes;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && std::abs(diffs[idx[j]]) == std::abs(diffs[idx[i]])) ++j;
        double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t t = i; t < j; ++t) ranks[idx[t]] = avg_rank;
        tie_sizes.push_back(j - i);
        i = j;
    }

    double w_plus = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (diffs[i] > 0.0) w_plus += ranks[i];
    result.w_statistic = w_plus;

    const double mu = static_cast<double>(n) * static_cast<double>(n + 1) / 4.0;

    if (n <= kExactLimit) {
        result.method = SignificanceResult::Method::Exact;
        // Two-sided exact p: fraction of sign patterns whose W+ deviates
        // from the null mean at least as much as the observed one.
        std::vector<double> sorted_ranks(n);
        for (std::size_t i = 0; i < n; ++i) sorted_ranks[i] = ranks[i];
        const double observed_dev = std::abs(w_plus - mu);
        const std::uint64_t patterns = 1ULL << n;
        std::uint64_t at_least = 0;
        for (std::uint64_t mask = 0; mask < patterns; ++mask) {
            double w = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1ULL << i)) w += sorted_ranks[i];
            if (std::abs(w - mu) >= observed_dev - 1e-12) ++at_least;
        }
        result.p_value = static_cast<double>(at_least) / static_cast<double>(patterns);
    } else {
        result.method = SignificanceResult::Method::NormalApprox;
        double variance = static_cast<double>(n) * static_cast<double>(n + 1) *
                          static_cast<double>(2 * n + 1) / 24.0;
        for (std::size_t t : tie_sizes) {
            double td = static_cast<double>(t);
            variance -= (td * td * td - td) / 48.0;
        }
        if (variance <= 0.0) {
            result.p_value = 1.0;
        } else {
            double dev = w_plus - mu;
            double cc = dev > 0.0 ? -0.5 : (dev < 0.0 ? 0.5 : 0.0);  // continuity correction
            double z = (dev + cc) / std::sqrt(variance);
            result.p_value = std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
        }
    }

    result.significant = result.p_value < kAlpha;
    return result;
}

}  // namespace dakit
