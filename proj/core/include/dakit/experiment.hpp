#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dakit/corpus.hpp"
#include "dakit/features.hpp"
#include "dakit/folds.hpp"
#include "dakit/svm.hpp"
#include "dakit/wilcoxon.hpp"

namespace dakit {

struct CVResult {
    std::vector<double> per_fold_accuracy;            // length k, values in [0,1]
    std::vector<std::int64_t> per_fold_correct;
    std::vector<std::int64_t> per_fold_total;
    double pooled_accuracy = 0.0;                     // trace(confusion)/sum(confusion)
    std::vector<std::vector<std::int64_t>> confusion; // gold x predicted

    double mean_accuracy() const;
};

// trace/sum of a square count matrix; throws on an empty or all-zero one.
double accuracy(const std::vector<std::vector<std::int64_t>>& confusion);

struct AccuracySummary {
    double mean = 0.0;    // mean of per-fold accuracies (headline number)
    double pooled = 0.0;  // all predictions combined
};
AccuracySummary mean_and_pool(std::span<const std::int64_t> per_fold_correct,
                              std::span<const std::int64_t> per_fold_total);

struct ExperimentSpec {
    FeatureConfig features;            // context fields are overridden per cell
    std::vector<ContextMode> modes;    // rows of the influence grid
    int n_prev_min = 0;
    int n_prev_max = 5;
    int k = 10;
    FoldGranularity granularity = FoldGranularity::Dialog;
    std::uint64_t seed = 0;
    SolverParams solver;
    bool global_dict = false;  // fit one dictionary on the full corpus instead of per fold
    int jobs = 1;

    void validate() const;
};

// Canonical row name for a context mode ("none", "untagged-ngrams",
// "indexed-ngrams", "da-manual-task", ...).
std::string mode_name(const ContextMode& mode);

// Runs k-fold cross-validation for one grid cell. The dictionary and model
// are fit on training folds only (unless spec.global_dict); context
// features are computed from the full dialog history. `folds` lets callers
// reuse one assignment across cells so per-fold accuracies stay paired.
// `predicted_labels`, when given, replaces manual task labels in DALabels
// context features ([dialog][segment], aligned with the corpus).
CVResult cross_validate(const Corpus& corpus, const ExperimentSpec& spec, const ContextMode& mode,
                        int n_prev, const FoldAssignment& folds,
                        const std::vector<std::vector<std::string>>* predicted_labels = nullptr);

// Convenience overload that builds its own fold assignment.
CVResult cross_validate(const Corpus& corpus, const ExperimentSpec& spec, const ContextMode& mode,
                        int n_prev);

struct ResultRow {
    std::string mode;
    int n_prev = 0;
    std::vector<double> per_fold;
    std::vector<std::int64_t> fold_correct;
    std::vector<std::int64_t> fold_total;
    double mean = 0.0;
    double pooled = 0.0;
    // Wilcoxon against the same mode's previous n_prev cell (absent on the
    // first column of a row group).
    std::optional<SignificanceResult> vs_prev;
};

struct ResultTable {
    int k = 0;
    std::vector<ResultRow> rows;  // mode-major, n_prev ascending

    const ResultRow* find(const std::string& mode, int n_prev) const;
};

// The full influence grid: every mode in spec.modes crossed with n_prev in
// [n_prev_min, n_prev_max], one fold assignment reused everywhere (cells are
// pairable), adjacent-n_prev Wilcoxon annotations attached. Cells at
// n_prev = 0 run without context regardless of mode and are identical
// across modes.
ResultTable influence_experiment(const Corpus& corpus, const ExperimentSpec& spec);

// The automatic-label (cascaded) protocol: the corpus is split in half by
// dialog order (first half gets the extra dialog when odd); three
// no-context classifiers are trained on the second half, the whole corpus,
// and the first half; each predicts a label for every second-half segment.
// The reported label accuracies mirror the dependence sweep, and the
// result table holds second-half cross-validation runs whose DALabels
// context comes from each predicted stream, next to a manual-annotation
// reference row.
struct CascadeResult {
    struct StreamAccuracy {
        std::string name;  // "second-half", "whole-corpus", "first-half"
        double label_accuracy = 0.0;
    };
    std::vector<StreamAccuracy> streams;
    ResultTable table;
};

CascadeResult cascade_experiment(const Corpus& corpus, const ExperimentSpec& spec);

// ResultTable exports: per-fold CSV `mode,n_prev,fold,accuracy` and a
// markdown grid (mean-of-folds headline, pooled alongside, `*` marking
// cells significantly different from the previous column).
void write_result_csv(const ResultTable& table, std::ostream& out);
void write_result_markdown(const ResultTable& table, std::ostream& out);

}  // namespace dakit
