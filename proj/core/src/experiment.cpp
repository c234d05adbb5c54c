#include "dakit/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "dakit/common.hpp"

namespace dakit {

namespace {

struct FoldEval {
    std::vector<std::vector<std::int64_t>> confusion;
    std::int64_t correct = 0;
    std::int64_t total = 0;
};

FoldEval evaluate_fold(const Vectorizer& vectorizer, const FoldAssignment& folds, int fold,
                       const ExperimentSpec& spec) {
    const Corpus& corpus = vectorizer.corpus();
    const auto& targets = vectorizer.targets();

    std::vector<Vectorizer::SampleRef> train;
    std::vector<Vectorizer::SampleRef> test;
    for (const auto& sample : targets) {
        if (folds.fold_of(vectorizer.segment(sample)) == fold)
            test.push_back(sample);
        else
            train.push_back(sample);
    }
    if (train.empty())
        throw std::runtime_error("fold " + std::to_string(fold) + ": empty training set");
    if (test.empty())
        throw std::runtime_error("fold " + std::to_string(fold) + ": empty test set");

    FeatureDictionary dict = spec.global_dict ? vectorizer.build_dictionary(targets)
                                              : vectorizer.build_dictionary(train);

    TrainingProblem problem;
    problem.n_classes = static_cast<std::int32_t>(corpus.label_set.size());
    problem.n_features = static_cast<std::uint32_t>(dict.size());
    problem.samples.reserve(train.size());
    problem.labels.reserve(train.size());
    for (const auto& sample : train) {
        problem.samples.push_back(vectorizer.vectorize(sample, dict));
        problem.labels.push_back(vectorizer.label_index(sample));
    }

    LinearModel model = train_ovr(problem, corpus.label_set, spec.solver);

    FoldEval eval;
    eval.confusion.assign(corpus.label_set.size(),
                          std::vector<std::int64_t>(corpus.label_set.size(), 0));
    for (const auto& sample : test) {
        SparseVector x = vectorizer.vectorize(sample, dict);
        std::size_t predicted = model.predict(x);
        int gold = vectorizer.label_index(sample);
        ++eval.confusion[gold][predicted];
        ++eval.total;
        if (static_cast<std::size_t>(gold) == predicted) ++eval.correct;
    }
    return eval;
}

ResultRow make_row(std::string mode, int n_prev, const CVResult& result) {
    ResultRow row;
    row.mode = std::move(mode);
    row.n_prev = n_prev;
    row.per_fold = result.per_fold_accuracy;
    row.fold_correct = result.per_fold_correct;
    row.fold_total = result.per_fold_total;
    row.mean = result.mean_accuracy();
    row.pooled = result.pooled_accuracy;
    return row;
}

// Attach adjacent-column Wilcoxon annotations within each mode group.
void annotate_significance(ResultTable& table) {
    for (auto& row : table.rows) {
        if (row.n_prev == 0) continue;
        const ResultRow* prev = table.find(row.mode, row.n_prev - 1);
        if (!prev) continue;
        row.vs_prev = wilcoxon(row.per_fold, prev->per_fold);
    }
}

Corpus subcorpus(const Corpus& corpus, std::size_t begin, std::size_t end) {
    Corpus out;
    out.variant = corpus.variant;
    out.label_set = corpus.label_set;
    out.aux_dimensions = corpus.aux_dimensions;
    out.dialogs.assign(corpus.dialogs.begin() + static_cast<std::ptrdiff_t>(begin),
                       corpus.dialogs.begin() + static_cast<std::ptrdiff_t>(end));
    return out;
}

// Train a no-context model on `training` and predict a task label for every
// target segment of `evaluation`. Non-target segments keep their own label.
struct StreamPrediction {
    std::vector<std::vector<std::string>> labels;  // aligned with `evaluation`
    double accuracy = 0.0;
};

StreamPrediction predict_stream(const Corpus& training, const Corpus& evaluation,
                                const ExperimentSpec& spec) {
    FeatureConfig cfg = spec.features;
    cfg.context = ContextMode::none();
    cfg.n_prev = 0;

    Vectorizer train_vec(training, cfg);
    FeatureDictionary dict = train_vec.build_dictionary(train_vec.targets());
    TrainingProblem problem;
    problem.n_classes = static_cast<std::int32_t>(training.label_set.size());
    problem.n_features = static_cast<std::uint32_t>(dict.size());
    for (const auto& sample : train_vec.targets()) {
        problem.samples.push_back(train_vec.vectorize(sample, dict));
        problem.labels.push_back(train_vec.label_index(sample));
    }
    LinearModel model = train_ovr(problem, training.label_set, spec.solver, spec.jobs);

    Vectorizer eval_vec(evaluation, cfg);
    StreamPrediction out;
    out.labels.resize(evaluation.dialogs.size());
    for (std::size_t d = 0; d < evaluation.dialogs.size(); ++d) {
        const Dialog& dialog = evaluation.dialogs[d];
        out.labels[d].resize(dialog.segments.size());
        for (const auto& seg : dialog.segments) out.labels[d][seg.index] = seg.label;
    }
    std::int64_t correct = 0;
    std::int64_t total = 0;
    for (const auto& sample : eval_vec.targets()) {
        SparseVector x = eval_vec.vectorize(sample, dict);
        std::size_t predicted = model.predict(x);
        const Segment& seg = eval_vec.segment(sample);
        out.labels[sample.dialog][sample.seg] = evaluation.label_set[predicted];
        ++total;
        if (evaluation.label_set[predicted] == seg.label) ++correct;
    }
    if (total == 0) throw std::runtime_error("prediction stream: no target segments");
    out.accuracy = static_cast<double>(correct) / static_cast<double>(total);
    return out;
}

}  // namespace

double CVResult::mean_accuracy() const {
    double s = 0.0;
    for (double a : per_fold_accuracy) s += a;
    return per_fold_accuracy.empty() ? 0.0 : s / static_cast<double>(per_fold_accuracy.size());
}

double accuracy(const std::vector<std::vector<std::int64_t>>& confusion) {
    std::int64_t diag = 0;
    std::int64_t total = 0;
    for (std::size_t i = 0; i < confusion.size(); ++i) {
        if (confusion[i].size() != confusion.size())
            throw ConfigError("accuracy: confusion matrix must be square");
        for (std::size_t j = 0; j < confusion[i].size(); ++j) total += confusion[i][j];
        diag += confusion[i][i];
    }
    if (total == 0) throw ConfigError("accuracy: empty confusion matrix");
    return static_cast<double>(diag) / static_cast<double>(total);
}

AccuracySummary mean_and_pool(std::span<const std::int64_t> per_fold_correct,
                              std::span<const std::int64_t> per_fold_total) {
    if (per_fold_correct.size() != per_fold_total.size() || per_fold_correct.empty())
        throw ConfigError("mean_and_pool: bad per-fold counts");
    AccuracySummary summary;
    std::int64_t correct = 0;
    std::int64_t total = 0;
    for (std::size_t i = 0; i < per_fold_correct.size(); ++i) {
        if (per_fold_total[i] <= 0) throw ConfigError("mean_and_pool: empty fold");
        summary.mean += static_cast<double>(per_fold_correct[i]) /
                        static_cast<double>(per_fold_total[i]);
        correct += per_fold_correct[i];
        total += per_fold_total[i];
    }
    summary.mean /= static_cast<double>(per_fold_correct.size());
    summary.pooled = static_cast<double>(correct) / static_cast<double>(total);
    return summary;
}

void ExperimentSpec::validate() const {
    if (n_prev_min < 0 || n_prev_max > 5 || n_prev_min > n_prev_max)
        throw ConfigError("n_prev range must lie within 0..5");
    if (k < 2) throw ConfigError("fold count must be at least 2");
    if (modes.empty()) throw ConfigError("experiment needs at least one context mode");
    FeatureConfig base = features;
    base.context = ContextMode::none();
    base.n_prev = 0;
    base.validate();
}

std::string mode_name(const ContextMode& mode) {
    switch (mode.kind) {
        case ContextKind::None: return "none";
        case ContextKind::UntaggedNGrams: return "untagged-ngrams";
        case ContextKind::IndexTaggedNGrams: return "indexed-ngrams";
        case ContextKind::DALabels: {
            std::string name = "da-";
            name += mode.label_source == LabelSource::Manual ? "manual" : "predicted";
            name += mode.dims == DimensionScope::TaskOnly ? "-task" : "-all";
            return name;
        }
    }
    return "?";
}

CVResult cross_validate(const Corpus& corpus, const ExperimentSpec& spec, const ContextMode& mode,
                        int n_prev, const FoldAssignment& folds,
                        const std::vector<std::vector<std::string>>* predicted_labels) {
    if (n_prev < 0 || n_prev > 5) throw ConfigError("n_prev must be in 0..5");

    FeatureConfig cfg = spec.features;
    if (n_prev == 0) {
        // No history: every mode degenerates to the same baseline cell.
        cfg.context = ContextMode::none();
        cfg.n_prev = 0;
    } else {
        cfg.context = mode;
        cfg.n_prev = n_prev;
    }
    cfg.validate();

    Vectorizer vectorizer(corpus, cfg);
    if (predicted_labels && cfg.context.kind == ContextKind::DALabels)
        vectorizer.set_predicted_labels(*predicted_labels);

    std::vector<FoldEval> evals(folds.k);
    parallel_for(static_cast<std::size_t>(folds.k), spec.jobs, [&](std::size_t f) {
        evals[f] = evaluate_fold(vectorizer, folds, static_cast<int>(f), spec);
    });

    CVResult result;
    result.confusion.assign(corpus.label_set.size(),
                            std::vector<std::int64_t>(corpus.label_set.size(), 0));
    for (const auto& eval : evals) {
        result.per_fold_correct.push_back(eval.correct);
        result.per_fold_total.push_back(eval.total);
        result.per_fold_accuracy.push_back(static_cast<double>(eval.correct) /
                                           static_cast<double>(eval.total));
        for (std::size_t i = 0; i < eval.confusion.size(); ++i)
            for (std::size_t j = 0; j < eval.confusion.size(); ++j)
                result.confusion[i][j] += eval.confusion[i][j];
    }
    result.pooled_accuracy = accuracy(result.confusion);
    return result;
}

CVResult cross_validate(const Corpus& corpus, const ExperimentSpec& spec, const ContextMode& mode,
                        int n_prev) {
    FoldAssignment folds = make_folds(corpus, spec.k, spec.seed, spec.granularity);
    return cross_validate(corpus, spec, mode, n_prev, folds);
}

const ResultRow* ResultTable::find(const std::string& mode, int n_prev) const {
    for (const auto& row : rows) {
        if (row.mode == mode && row.n_prev == n_prev) return &row;
    }
    return nullptr;
}

ResultTable influence_experiment(const Corpus& corpus, const ExperimentSpec& spec) {
    spec.validate();
    FoldAssignment folds = make_folds(corpus, spec.k, spec.seed, spec.granularity);

    ResultTable table;
    table.k = spec.k;
    for (const auto& mode : spec.modes) {
        for (int n = spec.n_prev_min; n <= spec.n_prev_max; ++n) {
            CVResult cell = cross_validate(corpus, spec, mode, n, folds);
            table.rows.push_back(make_row(mode_name(mode), n, cell));
        }
    }
    annotate_significance(table);
    return table;
}

CascadeResult cascade_experiment(const Corpus& corpus, const ExperimentSpec& spec) {
    spec.validate();
    const std::size_t n_dialogs = corpus.dialogs.size();
    if (n_dialogs < 2) throw ConfigError("cascade experiment needs at least 2 dialogs");

    const std::size_t mid = (n_dialogs + 1) / 2;  // first half gets the odd dialog
    Corpus first = subcorpus(corpus, 0, mid);
    Corpus second = subcorpus(corpus, mid, n_dialogs);

    CascadeResult result;
    struct NamedStream {
        std::string name;
        StreamPrediction prediction;
    };
    std::vector<NamedStream> streams;
    streams.push_back({"second-half", predict_stream(second, second, spec)});
    streams.push_back({"whole-corpus", predict_stream(corpus, second, spec)});
    streams.push_back({"first-half", predict_stream(first, second, spec)});
    for (const auto& s : streams)
        result.streams.push_back({s.name, s.prediction.accuracy});

    FoldAssignment folds = make_folds(second, spec.k, spec.seed, spec.granularity);
    result.table.k = spec.k;

    ContextMode manual = ContextMode::da_labels(LabelSource::Manual, DimensionScope::TaskOnly);
    for (int n = spec.n_prev_min; n <= spec.n_prev_max; ++n) {
        CVResult cell = cross_validate(second, spec, manual, n, folds);
        result.table.rows.push_back(make_row("da-manual", n, cell));
    }
    ContextMode predicted =
        ContextMode::da_labels(LabelSource::Predicted, DimensionScope::TaskOnly);
    for (const auto& s : streams) {
        for (int n = spec.n_prev_min; n <= spec.n_prev_max; ++n) {
            CVResult cell =
                cross_validate(second, spec, predicted, n, folds, &s.prediction.labels);
            result.table.rows.push_back(make_row("da-" + s.name, n, cell));
        }
    }
    annotate_significance(result.table);
    return result;
}

void write_result_csv(const ResultTable& table, std::ostream& out) {
    out << "mode,n_prev,fold,accuracy\n";
    char buf[32];
    for (const auto& row : table.rows) {
        for (std::size_t f = 0; f < row.per_fold.size(); ++f) {
            std::snprintf(buf, sizeof(buf), "%.6f", row.per_fold[f]);
            out << row.mode << "," << row.n_prev << "," << f << "," << buf << "\n";
        }
    }
}

void write_result_markdown(const ResultTable& table, std::ostream& out) {
    // Collect the mode groups and the n_prev columns actually present.
    std::vector<std::string> modes;
    std::vector<int> columns;
    for (const auto& row : table.rows) {
        if (std::find(modes.begin(), modes.end(), row.mode) == modes.end())
            modes.push_back(row.mode);
        if (std::find(columns.begin(), columns.end(), row.n_prev) == columns.end())
            columns.push_back(row.n_prev);
    }
    std::sort(columns.begin(), columns.end());

    char buf[32];
    auto emit_grid = [&](const char* title, bool pooled) {
        out << title << "\n\n";
        out << "| Context |";
        for (int n : columns) out << " " << n << " |";
        out << "\n|---|";
        for (std::size_t i = 0; i < columns.size(); ++i) out << "---|";
        out << "\n";
        for (const auto& mode : modes) {
            out << "| " << mode << " |";
            for (int n : columns) {
                const ResultRow* row = table.find(mode, n);
                if (!row) {
                    out << " - |";
                    continue;
                }
                double value = 100.0 * (pooled ? row->pooled : row->mean);
                std::snprintf(buf, sizeof(buf), "%.2f", value);
                out << " " << buf;
                if (!pooled && row->vs_prev && row->vs_prev->significant) out << "*";
                out << " |";
            }
            out << "\n";
        }
        out << "\n";
    };

    out << "# Accuracy (%) by context mode and number of preceding segments\n\n";
    emit_grid("Mean of per-fold accuracies:", false);
    emit_grid("Pooled accuracy:", true);
    out << "`*` marks a cell whose difference from the previous column is statistically\n"
           "significant under the Wilcoxon signed-rank test over paired per-fold\n"
           "accuracies (p < 0.05).\n";
}

}  // namespace dakit
