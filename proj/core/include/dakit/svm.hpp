#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dakit/features.hpp"

namespace dakit {

struct TrainingProblem {
    std::vector<SparseVector> samples;
    std::vector<std::int32_t> labels;  // class indices, < n_classes
    std::int32_t n_classes = 0;
    std::uint32_t n_features = 0;

    void validate() const;
};

struct SolverParams {
    double cost = 0.1;       // SVM cost parameter C
    double stop_tol = 0.01;  // max projected-gradient violation at exit
    int max_epochs = 1000;
    std::uint64_t seed = 0;
    double bias = 1.0;  // augmented constant feature value; 0 disables bias
};

// Called after each epoch with (epoch, dual objective value, max projected
// gradient violation seen in the sweep). Test instrumentation hook.
using EpochCallback = std::function<void(int, double, double)>;

// Trains a binary L2-regularized L1-loss (hinge) SVM by dual coordinate
// descent: multipliers alpha in [0,C]^m with w = sum alpha_i y_i x_i kept
// incrementally; each epoch visits samples in a fresh seeded random
// permutation and applies a projected Newton step using gradient
// y_i*(w.x_i) - 1 and the per-sample diagonal |x_i|^2. Returns the weight
// vector of size n_features+1 (last entry = bias weight). An all-one-class
// problem is a valid degenerate dual and trains normally. Non-finite
// feature values raise an error.
std::vector<double> train_binary(std::span<const SparseVector> samples,
                                 std::span<const std::int8_t> targets,  // +1 / -1
                                 std::uint32_t n_features, const SolverParams& params,
                                 const EpochCallback& on_epoch = {});

class LinearModel {
public:
    LinearModel() = default;
    LinearModel(std::vector<std::vector<double>> weights, std::vector<std::string> labels,
                std::uint32_t n_features, double bias);

    std::uint32_t n_features() const { return n_features_; }
    std::size_t n_classes() const { return labels_.size(); }
    double bias() const { return bias_; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::span<const double> class_weights(std::size_t c) const { return weights_[c]; }

    // w_c . x + bias_weight_c * bias, one value per class. Feature ids
    // beyond n_features raise an error.
    std::vector<double> decision_values(const SparseVector& x) const;

    // Arg-max class; ties break toward the lowest class index.
    std::size_t predict(const SparseVector& x) const;

private:
    std::vector<std::vector<double>> weights_;  // n_classes x (n_features+1)
    std::vector<std::string> labels_;
    std::uint32_t n_features_ = 0;
    double bias_ = 1.0;
};

// One-vs-rest training: one binary solve per class (that class +1, rest
// -1). Every solve uses the same seed so the per-class subproblem does not
// depend on class ordering. Classes absent from the training data get an
// all-zero row. Subproblems are independent; `jobs` > 1 trains them in
// parallel without affecting the result.
LinearModel train_ovr(const TrainingProblem& problem, std::span<const std::string> label_names,
                      const SolverParams& params, int jobs = 1);

// Versioned text model format; load(save(m)) reproduces decision values
// bit-exactly.
void save_model(const LinearModel& model, std::ostream& out);
void save_model(const LinearModel& model, const std::string& path);
LinearModel load_model(std::istream& in);
LinearModel load_model(const std::string& path);

}  // namespace dakit
