#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dakit::testing {

namespace {

double sparse_dot(const SparseVector& a, const SparseVector& b) {
    double s = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.entries.size() && j < b.entries.size()) {
        if (a.entries[i].first < b.entries[j].first)
            ++i;
        else if (a.entries[i].first > b.entries[j].first)
            ++j;
        else
            s += a.entries[i++].second * b.entries[j++].second;
    }
    return s;
}

}  // namespace

std::vector<double> dual_oracle_weights(std::span<const SparseVector> samples,
                                        std::span<const std::int8_t> targets,
                                        std::uint32_t n_features, double cost, double bias,
                                        double tol) {
    const std::size_t m = samples.size();
    std::vector<std::vector<double>> gram(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            double k = sparse_dot(samples[i], samples[j]) + bias * bias;
            gram[i][j] = static_cast<double>(targets[i]) * static_cast<double>(targets[j]) * k;
        }
    }
    // Gershgorin bound on the largest eigenvalue gives a safe step size.
    double lip = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m; ++j) row += std::abs(gram[i][j]);
        lip = std::max(lip, row);
    }
    double step = lip > 0.0 ? 1.0 / lip : 1.0;

    std::vector<double> alpha(m, 0.0);
    std::vector<double> grad(m, 0.0);
    const long max_iters = 20'000'000;
    for (long iter = 0; iter < max_iters; ++iter) {
        double worst = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double g = -1.0;
            for (std::size_t j = 0; j < m; ++j) g += gram[i][j] * alpha[j];
            grad[i] = g;
            double pg = g;
            if (alpha[i] <= 0.0)
                pg = std::min(g, 0.0);
            else if (alpha[i] >= cost)
                pg = std::max(g, 0.0);
            worst = std::max(worst, std::abs(pg));
        }
        if (worst < tol) break;
        for (std::size_t i = 0; i < m; ++i)
            alpha[i] = std::clamp(alpha[i] - step * grad[i], 0.0, cost);
        if (iter == max_iters - 1) throw std::runtime_error("dual oracle did not converge");
    }

    std::vector<double> w(n_features + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double coeff = alpha[i] * static_cast<double>(targets[i]);
        for (const auto& [id, value] : samples[i].entries) w[id] += coeff * value;
        w[n_features] += coeff * bias;
    }
    return w;
}

RandomProblem random_problem(Rng& rng) {
    RandomProblem problem;
    std::size_t m = 2 + rng.below(11);  // 2..12 samples
    problem.n_features = static_cast<std::uint32_t>(1 + rng.below(5));
    problem.cost = rng.below(2) == 0 ? 0.1 : 1.0;
    problem.samples.resize(m);
    problem.targets.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        problem.targets[i] = rng.below(2) == 0 ? 1 : -1;
        SparseVector& x = problem.samples[i];
        for (std::uint32_t f = 0; f < problem.n_features; ++f) {
            if (rng.below(100) < 60) continue;  // keep vectors sparse
            double value = (rng.uniform() * 4.0) - 2.0;
            if (value == 0.0) value = 0.5;
            x.entries.emplace_back(f, value);
        }
    }
    // Guarantee both classes appear most of the time but leave the
    // occasional single-class degenerate problem in the mix.
    if (m >= 2 && rng.below(10) > 0) {
        problem.targets[0] = 1;
        problem.targets[1] = -1;
    }
    return problem;
}

double wilcoxon_exact_oracle(std::span<const double> a, std::span<const double> b) {
    std::vector<double> abs_diffs;
    std::vector<int> signs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        if (d == 0.0) continue;
        abs_diffs.push_back(std::abs(d));
        signs.push_back(d > 0.0 ? 1 : -1);
    }
    const std::size_t n = abs_diffs.size();
    if (n == 0) return 1.0;

    // Average ranks computed by counting smaller/equal magnitudes.
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t smaller = 0;
        std::size_t equal = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (abs_diffs[j] < abs_diffs[i]) ++smaller;
            if (abs_diffs[j] == abs_diffs[i]) ++equal;
        }
        ranks[i] = static_cast<double>(smaller) +
                   (static_cast<double>(equal) + 1.0) / 2.0;
    }

    double observed = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (signs[i] > 0) observed += ranks[i];
    const double mu = static_cast<double>(n) * static_cast<double>(n + 1) / 4.0;
    const double observed_dev = std::abs(observed - mu);

    std::uint64_t extreme = 0;
    std::uint64_t total = 0;
    // Recursive enumeration of every sign assignment.
    auto visit = [&](auto&& self, std::size_t i, double w_plus) -> void {
        if (i == n) {
            ++total;
            if (std::abs(w_plus - mu) >= observed_dev - 1e-12) ++extreme;
            return;
        }
        self(self, i + 1, w_plus);
        self(self, i + 1, w_plus + ranks[i]);
    };
    visit(visit, 0, 0.0);
    return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace dakit::testing
