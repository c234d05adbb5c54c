#include "dakit/svm.hpp"

#include <algorithm>
#include <cmath>

#include "dakit/common.hpp"

namespace dakit {

void TrainingProblem::validate() const {
    if (samples.size() != labels.size())
        throw ConfigError("training problem: sample/label count mismatch");
    for (std::int32_t label : labels) {
        if (label < 0 || label >= n_classes)
            throw ConfigError("training problem: class index out of range");
    }
    for (const auto& x : samples) {
        for (const auto& [id, value] : x.entries) {
            if (id >= n_features)
                throw ConfigError("training problem: feature id out of range");
            if (!std::isfinite(value))
                throw std::runtime_error("training problem: non-finite feature value");
        }
    }
}

std::vector<double> train_binary(std::span<const SparseVector> samples,
                                 std::span<const std::int8_t> targets, std::uint32_t n_features,
                                 const SolverParams& params, const EpochCallback& on_epoch) {
    if (samples.size() != targets.size())
        throw ConfigError("train_binary: sample/target count mismatch");
    if (params.cost <= 0.0) throw ConfigError("cost must be positive");
    if (params.stop_tol <= 0.0) throw ConfigError("stop_tol must be positive");

    const std::size_t m = samples.size();
    const double C = params.cost;
    const bool use_bias = params.bias != 0.0;
    const std::uint32_t dim = n_features + 1;  // last slot = bias weight

    // Per-sample squared norms (the Newton denominators), bias included.
    std::vector<double> q_diag(m);
    for (std::size_t i = 0; i < m; ++i) {
        double s = use_bias ? params.bias * params.bias : 0.0;
        for (const auto& [id, value] : samples[i].entries) {
            if (id >= n_features)
                throw ConfigError("train_binary: feature id out of range");
            if (!std::isfinite(value))
                throw std::runtime_error("train_binary: non-finite feature value");
            s += value * value;
        }
        if (s == 0.0)
            throw ConfigError("train_binary: empty sample with bias disabled");
        q_diag[i] = s;
        if (targets[i] != 1 && targets[i] != -1)
            throw ConfigError("train_binary: targets must be +1 or -1");
    }

    std::vector<double> w(dim, 0.0);
    std::vector<double> alpha(m, 0.0);
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;

    auto margin = [&](std::size_t i) {
        double dot = use_bias ? w[n_features] * params.bias : 0.0;
        for (const auto& [id, value] : samples[i].entries) dot += w[id] * value;
        return static_cast<double>(targets[i]) * dot;
    };
    auto dual_objective = [&] {
        double wn = 0.0;
        for (double v : w) wn += v * v;
        double asum = 0.0;
        for (double a : alpha) asum += a;
        return 0.5 * wn - asum;
    };
    // Static KKT check at the current w: returns the largest projected
    // gradient violation over all samples.
    auto max_static_violation = [&] {
        double worst = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double g = margin(i) - 1.0;
            double pg = g;
            if (alpha[i] <= 0.0)
                pg = std::min(g, 0.0);
            else if (alpha[i] >= C)
                pg = std::max(g, 0.0);
            worst = std::max(worst, std::abs(pg));
        }
        return worst;
    };

    Rng rng(params.seed);
    for (int epoch = 1; epoch <= params.max_epochs; ++epoch) {
        // Fresh permutation each epoch.
        for (std::size_t i = m; i > 1; --i)
            std::swap(order[i - 1], order[rng.below(i)]);

        double max_violation = 0.0;
        for (std::size_t idx = 0; idx < m; ++idx) {
            std::size_t i = order[idx];
            double g = margin(i) - 1.0;
            double pg = g;
            if (alpha[i] <= 0.0)
                pg = std::min(g, 0.0);
            else if (alpha[i] >= C)
                pg = std::max(g, 0.0);
            max_violation = std::max(max_violation, std::abs(pg));
            if (pg == 0.0) continue;

            double old = alpha[i];
            double next = std::clamp(old - g / q_diag[i], 0.0, C);
            if (next == old) continue;
            alpha[i] = next;
            double step = (next - old) * static_cast<double>(targets[i]);
            for (const auto& [id, value] : samples[i].entries) w[id] += step * value;
            if (use_bias) w[n_features] += step * params.bias;
        }

        if (on_epoch) on_epoch(epoch, dual_objective(), max_violation);
        // The sweep measures violations against a moving w; confirm against
        // the final w before stopping so the returned solution satisfies
        // the KKT conditions within stop_tol.
        if (max_violation < params.stop_tol && max_static_violation() < params.stop_tol) break;
    }
    return w;
}

LinearModel::LinearModel(std::vector<std::vector<double>> weights, std::vector<std::string> labels,
                         std::uint32_t n_features, double bias)
    : weights_(std::move(weights)), labels_(std::move(labels)), n_features_(n_features),
      bias_(bias) {
    if (weights_.size() != labels_.size())
        throw ConfigError("model: weight row count does not match label count");
    for (const auto& row : weights_) {
        if (row.size() != static_cast<std::size_t>(n_features_) + 1)
            throw ConfigError("model: weight row has wrong width");
        for (double v : row)
            if (!std::isfinite(v)) throw std::runtime_error("model: non-finite weight");
    }
}

std::vector<double> LinearModel::decision_values(const SparseVector& x) const {
    for (const auto& [id, value] : x.entries) {
        (void)value;
        if (id >= n_features_)
            throw std::runtime_error("decision_values: feature id " + std::to_string(id) +
                                     " out of range for model with " +
                                     std::to_string(n_features_) + " features");
    }
    std::vector<double> values(labels_.size(), 0.0);
    for (std::size_t c = 0; c < labels_.size(); ++c) {
        const auto& w = weights_[c];
        double dot = w[n_features_] * bias_;
        for (const auto& [id, value] : x.entries) dot += w[id] * value;
        values[c] = dot;
    }
    return values;
}

std::size_t LinearModel::predict(const SparseVector& x) const {
    auto values = decision_values(x);
    std::size_t best = 0;
    for (std::size_t c = 1; c < values.size(); ++c) {
        if (values[c] > values[best]) best = c;
    }
    return best;
}

LinearModel train_ovr(const TrainingProblem& problem, std::span<const std::string> label_names,
                      const SolverParams& params, int jobs) {
    problem.validate();
    if (problem.n_classes < 1) throw ConfigError("train_ovr: need at least one class");
    if (label_names.size() != static_cast<std::size_t>(problem.n_classes))
        throw ConfigError("train_ovr: label name count does not match n_classes");

    std::vector<std::size_t> class_counts(problem.n_classes, 0);
    for (std::int32_t label : problem.labels) ++class_counts[label];

    std::vector<std::vector<double>> weights(problem.n_classes);
    parallel_for(static_cast<std::size_t>(problem.n_classes), jobs, [&](std::size_t c) {
        if (class_counts[c] == 0) {
            weights[c].assign(problem.n_features + 1, 0.0);
            return;
        }
        std::vector<std::int8_t> targets(problem.samples.size());
        for (std::size_t i = 0; i < problem.samples.size(); ++i)
            targets[i] = problem.labels[i] == static_cast<std::int32_t>(c) ? 1 : -1;
        try {
            weights[c] = train_binary(problem.samples, targets, problem.n_features, params);
        } catch (const std::exception& e) {
            throw std::runtime_error("class `" + std::string(label_names[c]) + "`: " + e.what());
        }
    });

    return LinearModel(std::move(weights),
                       std::vector<std::string>(label_names.begin(), label_names.end()),
                       problem.n_features, params.bias);
}

}  // namespace dakit
