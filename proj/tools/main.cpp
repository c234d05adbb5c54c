// dakit: dialog act recognition toolkit command line.
//
// Subcommands: parse, featurize, train, predict, cv, experiment,
// significance. Exit codes: 0 success, 1 runtime failure, 2 usage or
// configuration error.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dakit/common.hpp"
#include "dakit/corpus.hpp"
#include "dakit/dialogbank.hpp"
#include "dakit/experiment.hpp"
#include "dakit/features.hpp"
#include "dakit/folds.hpp"
#include "dakit/lego.hpp"
#include "dakit/svm.hpp"
#include "dakit/switchboard.hpp"
#include "dakit/wilcoxon.hpp"

namespace fs = std::filesystem;
using namespace dakit;

namespace {

struct CorpusOptions {
    std::vector<std::string> paths;
    std::string format;  // swda | lego | dialogbank | dump
    std::string corpus_root;
    std::string variant = "swda44";
    std::string mapping_path;
    std::vector<std::string> speakers;
};

struct FeatureOptions {
    int max_n = 2;
    bool specific_n = false;  // use order max_n only instead of 1..max_n
    std::string markup = "split";
    std::string context = "none";
    std::string dims = "task";
    int n_prev = 0;
    bool no_wh = false;
    bool no_punct = false;
};

struct SolverOptions {
    double cost = 0.1;
    double tol = 0.01;
    int max_epochs = 1000;
    double bias = 1.0;
};

void add_corpus_options(CLI::App* cmd, CorpusOptions& opt) {
    cmd->add_option("paths", opt.paths, "Corpus files (or a directory for swda)")
        ->required()
        ->expected(-1);
    cmd->add_option("--format", opt.format, "Corpus format: swda, lego, dialogbank, dump")
        ->required();
    cmd->add_option("--corpus-root", opt.corpus_root,
                    "Directory prepended to relative corpus paths")
        ->envname("DAKIT_CORPUS_ROOT");
    cmd->add_option("--variant", opt.variant,
                    "Switchboard tag-set variant: swda44, swda43, swda42, swda41");
    cmd->add_option("--mapping", opt.mapping_path,
                    "Label mapping config (`source -> target`, `source -> DROP`)");
    cmd->add_option("--speakers", opt.speakers,
                    "Restrict classification targets to these speakers (\"*\" = all)")
        ->delimiter(',');
}

void add_feature_options(CLI::App* cmd, FeatureOptions& opt) {
    cmd->add_option("--max-n", opt.max_n, "Largest n-gram order (1..5)");
    cmd->add_flag("--specific-n", opt.specific_n,
                  "Use only order max-n n-grams instead of cumulative 1..max-n");
    cmd->add_option("--markup", opt.markup, "Transcription markup handling: split or atomic");
    cmd->add_option("--context", opt.context,
                    "Context features: none, untagged, indexed, da-manual, da-predicted");
    cmd->add_option("--dims", opt.dims, "DA-label context dimensions: task or all");
    cmd->add_option("--n-prev", opt.n_prev, "Preceding segments to draw context from (0..5)");
    cmd->add_flag("--no-wh", opt.no_wh, "Disable wh-word indicators");
    cmd->add_flag("--no-punct", opt.no_punct, "Disable punctuation indicators");
}

void add_solver_options(CLI::App* cmd, SolverOptions& opt) {
    cmd->add_option("--cost", opt.cost, "SVM cost parameter C");
    cmd->add_option("--tol", opt.tol, "Solver stopping tolerance");
    cmd->add_option("--max-epochs", opt.max_epochs, "Solver epoch budget");
    cmd->add_option("--bias", opt.bias, "Bias feature value (0 disables the bias term)");
}

std::string resolve_path(const std::string& path, const std::string& root) {
    if (root.empty() || fs::path(path).is_absolute()) return path;
    return (fs::path(root) / path).string();
}

ContextMode context_mode_from_string(const std::string& s, const std::string& dims) {
    DimensionScope scope;
    if (dims == "task")
        scope = DimensionScope::TaskOnly;
    else if (dims == "all")
        scope = DimensionScope::All;
    else
        throw ConfigError("unknown --dims value: " + dims);
    if (s == "none") return ContextMode::none();
    if (s == "untagged") return ContextMode::untagged();
    if (s == "indexed") return ContextMode::indexed();
    if (s == "da-manual") return ContextMode::da_labels(LabelSource::Manual, scope);
    if (s == "da-predicted") return ContextMode::da_labels(LabelSource::Predicted, scope);
    throw ConfigError("unknown --context value: " + s);
}

FeatureConfig make_feature_config(const FeatureOptions& opt) {
    FeatureConfig cfg;
    cfg.ngrams.max_n = opt.max_n;
    cfg.ngrams.cumulative = !opt.specific_n;
    cfg.markup = markup_mode_from_string(opt.markup);
    cfg.context = context_mode_from_string(opt.context, opt.dims);
    cfg.n_prev = opt.n_prev;
    cfg.wh_indicators = !opt.no_wh;
    cfg.punct_indicators = !opt.no_punct;
    cfg.validate();
    return cfg;
}

SolverParams make_solver_params(const SolverOptions& opt, std::uint64_t seed) {
    SolverParams params;
    params.cost = opt.cost;
    params.stop_tol = opt.tol;
    params.max_epochs = opt.max_epochs;
    params.bias = opt.bias;
    params.seed = seed;
    return params;
}

Corpus load_corpus(const CorpusOptions& opt) {
    if (opt.format != "swda" && opt.format != "lego" && opt.format != "dialogbank" &&
        opt.format != "dump")
        throw ConfigError("unknown --format value: " + opt.format);

    std::vector<std::string> files;
    for (const auto& raw : opt.paths) {
        std::string path = resolve_path(raw, opt.corpus_root);
        if (fs::is_directory(path)) {
            std::vector<std::string> found;
            for (const auto& entry : fs::directory_iterator(path)) {
                if (entry.is_regular_file()) found.push_back(entry.path().string());
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(path);
        }
    }
    if (files.empty()) throw std::runtime_error("no corpus files found");

    Corpus corpus;
    if (opt.format == "swda") {
        std::vector<Dialog> dialogs;
        for (const auto& file : files) {
            std::ifstream in(file);
            if (!in) throw std::runtime_error("cannot open corpus file: " + file);
            dialogs.push_back(parse_switchboard(in, fs::path(file).stem().string()));
        }
        corpus = make_swda_corpus(std::move(dialogs));
        corpus = apply_tagset_variant(corpus, tagset_variant_from_string(opt.variant));
    } else {
        if (files.size() != 1)
            throw ConfigError("format " + opt.format + " expects exactly one input file");
        std::ifstream in(files[0]);
        if (!in) throw std::runtime_error("cannot open corpus file: " + files[0]);
        if (opt.format == "lego")
            corpus = parse_lego(in);
        else if (opt.format == "dialogbank")
            corpus = parse_dialogbank_tsv(in);
        else
            corpus = parse_corpus_dump(in);
    }

    if (!opt.mapping_path.empty()) {
        LabelMapping mapping =
            LabelMapping::load(resolve_path(opt.mapping_path, opt.corpus_root));
        corpus = map_labels(corpus, mapping);
    }
    if (!opt.speakers.empty()) corpus = filter_segments(corpus, opt.speakers);
    return corpus;
}

void print_distribution(const Corpus& corpus, std::ostream& out) {
    auto table = label_distribution(corpus);
    std::size_t total = 0;
    for (const auto& row : table) total += row.count;
    out << "label\tcount\tpercent\n";
    char buf[32];
    for (const auto& row : table) {
        std::snprintf(buf, sizeof(buf), "%.2f", row.percent);
        out << row.label << "\t" << row.count << "\t" << buf << "\n";
    }
    out << "total\t" << total << "\t100.00\n";
}

// Model metadata sidecar: the feature configuration a model was trained
// with, needed to vectorize corpora at prediction time.
void save_meta(const FeatureConfig& cfg, const std::string& path) {
    std::ostringstream out;
    out << "dakit-meta v1\n";
    out << "markup=" << to_string(cfg.markup) << "\n";
    out << "max_n=" << cfg.ngrams.max_n << "\n";
    out << "cumulative=" << (cfg.ngrams.cumulative ? 1 : 0) << "\n";
    out << "context=" << mode_name(cfg.context) << "\n";
    out << "n_prev=" << cfg.n_prev << "\n";
    out << "wh=" << (cfg.wh_indicators ? 1 : 0) << "\n";
    out << "punct=" << (cfg.punct_indicators ? 1 : 0) << "\n";
    out << "aux_dims=";
    for (std::size_t i = 0; i < cfg.aux_dimensions.size(); ++i) {
        if (i) out << "|";
        out << cfg.aux_dimensions[i];
    }
    out << "\n";
    write_file(path, out.str());
}

FeatureConfig load_meta(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model metadata: " + path);
    std::string line;
    if (!std::getline(in, line) || line != "dakit-meta v1")
        throw ParseError("bad model metadata header in " + path);
    FeatureConfig cfg;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("bad metadata line: " + line);
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key == "markup") {
            cfg.markup = markup_mode_from_string(value);
        } else if (key == "max_n") {
            cfg.ngrams.max_n = std::stoi(value);
        } else if (key == "cumulative") {
            cfg.ngrams.cumulative = value == "1";
        } else if (key == "context") {
            if (value == "none") cfg.context = ContextMode::none();
            else if (value == "untagged-ngrams") cfg.context = ContextMode::untagged();
            else if (value == "indexed-ngrams") cfg.context = ContextMode::indexed();
            else if (value == "da-manual-task")
                cfg.context = ContextMode::da_labels(LabelSource::Manual, DimensionScope::TaskOnly);
            else if (value == "da-manual-all")
                cfg.context = ContextMode::da_labels(LabelSource::Manual, DimensionScope::All);
            else if (value == "da-predicted-task")
                cfg.context =
                    ContextMode::da_labels(LabelSource::Predicted, DimensionScope::TaskOnly);
            else if (value == "da-predicted-all")
                cfg.context = ContextMode::da_labels(LabelSource::Predicted, DimensionScope::All);
            else
                throw ParseError("unknown context mode in metadata: " + value);
        } else if (key == "n_prev") {
            cfg.n_prev = std::stoi(value);
        } else if (key == "wh") {
            cfg.wh_indicators = value == "1";
        } else if (key == "punct") {
            cfg.punct_indicators = value == "1";
        } else if (key == "aux_dims") {
            if (!value.empty())
                for (auto& dim : split(value, '|')) cfg.aux_dimensions.push_back(dim);
        } else {
            throw ParseError("unknown metadata key: " + key);
        }
    }
    cfg.validate();
    return cfg;
}

std::string hash_line(const std::string& name, const std::string& content) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(content)));
    return "output " + name + " fnv1a64 " + buf;
}

// ---- subcommand drivers ----

struct ParseArgs {
    CorpusOptions corpus;
    std::string out = "-";
};

int run_parse(const ParseArgs& args) {
    Corpus corpus = load_corpus(args.corpus);
    std::ostringstream dump;
    write_corpus_dump(corpus, dump);
    if (args.out == "-") {
        std::cout << dump.str();
        print_distribution(corpus, std::cerr);
    } else {
        write_file(args.out, dump.str());
        print_distribution(corpus, std::cout);
    }
    return 0;
}

struct FeaturizeArgs {
    CorpusOptions corpus;
    FeatureOptions features;
    std::string out = "-";
    std::string dict_out;
};

int run_featurize(const FeaturizeArgs& args) {
    Corpus corpus = load_corpus(args.corpus);
    FeatureConfig cfg = make_feature_config(args.features);
    if (cfg.context.label_source == LabelSource::Predicted)
        throw ConfigError("featurize supports manual context labels only");
    Vectorizer vectorizer(corpus, cfg);
    FeatureDictionary dict = vectorizer.build_dictionary(vectorizer.targets());
    std::ostringstream out;
    write_sparse_dataset(out, corpus, vectorizer, dict);
    if (args.out == "-")
        std::cout << out.str();
    else
        write_file(args.out, out.str());
    if (!args.dict_out.empty()) {
        std::ostringstream dict_text;
        dict.save(dict_text);
        write_file(args.dict_out, dict_text.str());
    }
    return 0;
}

struct TrainArgs {
    CorpusOptions corpus;
    FeatureOptions features;
    SolverOptions solver;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string out;
};

int run_train(const TrainArgs& args) {
    Corpus corpus = load_corpus(args.corpus);
    FeatureConfig cfg = make_feature_config(args.features);
    if (cfg.context.label_source == LabelSource::Predicted)
        throw ConfigError("train supports manual context labels only");
    cfg.aux_dimensions = corpus.aux_dimensions;
    Vectorizer vectorizer(corpus, cfg);
    if (vectorizer.targets().empty()) throw std::runtime_error("corpus has no target segments");

    FeatureDictionary dict = vectorizer.build_dictionary(vectorizer.targets());
    TrainingProblem problem;
    problem.n_classes = static_cast<std::int32_t>(corpus.label_set.size());
    problem.n_features = static_cast<std::uint32_t>(dict.size());
    for (const auto& sample : vectorizer.targets()) {
        problem.samples.push_back(vectorizer.vectorize(sample, dict));
        problem.labels.push_back(vectorizer.label_index(sample));
    }
    LinearModel model =
        train_ovr(problem, corpus.label_set, make_solver_params(args.solver, args.seed),
                  args.jobs);

    save_model(model, args.out);
    std::ostringstream dict_text;
    dict.save(dict_text);
    write_file(args.out + ".dict", dict_text.str());
    save_meta(cfg, args.out + ".meta");
    std::cout << "trained " << model.n_classes() << " classes over " << dict.size()
              << " features from " << problem.samples.size() << " segments\n";
    return 0;
}

struct PredictArgs {
    CorpusOptions corpus;
    std::string model_path;
    std::string out = "-";
};

int run_predict(const PredictArgs& args) {
    LinearModel model = load_model(args.model_path);
    std::ifstream dict_in(args.model_path + ".dict");
    if (!dict_in)
        throw std::runtime_error("cannot open dictionary: " + args.model_path + ".dict");
    FeatureDictionary dict = FeatureDictionary::load(dict_in);
    if (dict.size() != model.n_features())
        throw std::runtime_error("model/dictionary mismatch: model has " +
                                 std::to_string(model.n_features()) + " features, dictionary " +
                                 std::to_string(dict.size()));
    FeatureConfig cfg = load_meta(args.model_path + ".meta");

    Corpus corpus = load_corpus(args.corpus);
    Vectorizer vectorizer(corpus, cfg);

    std::ostringstream out;
    out << "dialog_id\tindex\tgold\tpredicted\n";
    std::int64_t correct = 0;
    std::int64_t total = 0;
    for (const auto& sample : vectorizer.targets()) {
        const Segment& seg = vectorizer.segment(sample);
        SparseVector x = vectorizer.vectorize(sample, dict);
        std::size_t predicted = model.predict(x);
        out << seg.dialog_id << "\t" << seg.index << "\t" << seg.label << "\t"
            << model.labels()[predicted] << "\n";
        ++total;
        if (model.labels()[predicted] == seg.label) ++correct;
    }
    if (total == 0) throw std::runtime_error("corpus has no target segments");
    if (args.out == "-")
        std::cout << out.str();
    else
        write_file(args.out, out.str());
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f",
                  static_cast<double>(correct) / static_cast<double>(total));
    std::cerr << "accuracy " << buf << " (" << correct << "/" << total << ")\n";
    return 0;
}

struct CvArgs {
    CorpusOptions corpus;
    FeatureOptions features;
    SolverOptions solver;
    std::uint64_t seed = 0;
    int folds = 10;
    std::string granularity = "dialog";
    std::string dict_scope = "fold";
    int jobs = 1;
    std::string outdir;
};

ExperimentSpec make_spec(const FeatureOptions& features, const SolverOptions& solver,
                         std::uint64_t seed, int folds, const std::string& granularity,
                         const std::string& dict_scope, int jobs) {
    ExperimentSpec spec;
    spec.features = make_feature_config(features);
    spec.k = folds;
    spec.granularity = fold_granularity_from_string(granularity);
    spec.seed = seed;
    spec.solver = make_solver_params(solver, seed);
    if (dict_scope == "global")
        spec.global_dict = true;
    else if (dict_scope != "fold")
        throw ConfigError("--dict must be fold or global");
    spec.jobs = jobs;
    return spec;
}

int run_cv(const CvArgs& args) {
    Corpus corpus = load_corpus(args.corpus);
    ExperimentSpec spec = make_spec(args.features, args.solver, args.seed, args.folds,
                                    args.granularity, args.dict_scope, args.jobs);
    spec.features.aux_dimensions = corpus.aux_dimensions;
    spec.modes = {spec.features.context};
    ContextMode mode = spec.features.context;
    int n_prev = spec.features.n_prev;

    CVResult result = cross_validate(corpus, spec, mode, n_prev);

    fs::create_directories(args.outdir);
    char buf[32];
    {
        std::ostringstream out;
        out << "fold,correct,total,accuracy\n";
        for (std::size_t f = 0; f < result.per_fold_accuracy.size(); ++f) {
            std::snprintf(buf, sizeof(buf), "%.6f", result.per_fold_accuracy[f]);
            out << f << "," << result.per_fold_correct[f] << "," << result.per_fold_total[f]
                << "," << buf << "\n";
        }
        write_file((fs::path(args.outdir) / "folds.csv").string(), out.str());
    }
    {
        std::ostringstream out;
        out << "gold\\predicted";
        for (const auto& label : corpus.label_set) out << "," << label;
        out << "\n";
        for (std::size_t i = 0; i < result.confusion.size(); ++i) {
            out << corpus.label_set[i];
            for (std::size_t j = 0; j < result.confusion[i].size(); ++j)
                out << "," << result.confusion[i][j];
            out << "\n";
        }
        write_file((fs::path(args.outdir) / "confusion.csv").string(), out.str());
    }
    AccuracySummary summary = mean_and_pool(result.per_fold_correct, result.per_fold_total);
    {
        std::ostringstream out;
        std::snprintf(buf, sizeof(buf), "%.6f", summary.mean);
        out << "mean " << buf << "\n";
        std::snprintf(buf, sizeof(buf), "%.6f", summary.pooled);
        out << "pooled " << buf << "\n";
        write_file((fs::path(args.outdir) / "summary.txt").string(), out.str());
    }
    std::snprintf(buf, sizeof(buf), "%.4f", summary.mean);
    std::cout << "mean accuracy " << buf;
    std::snprintf(buf, sizeof(buf), "%.4f", summary.pooled);
    std::cout << ", pooled " << buf << " over " << args.folds << " folds\n";
    return 0;
}

struct ExperimentArgs {
    CorpusOptions corpus;
    FeatureOptions features;
    SolverOptions solver;
    std::uint64_t seed = 0;
    int folds = 10;
    std::string granularity = "dialog";
    std::string dict_scope = "fold";
    int jobs = 1;
    std::string protocol = "influence";
    std::vector<std::string> modes = {"untagged", "indexed", "da-manual"};
    int n_prev_max = 5;
    std::string outdir;
};

int run_experiment(const ExperimentArgs& args) {
    Corpus corpus = load_corpus(args.corpus);
    ExperimentSpec spec = make_spec(args.features, args.solver, args.seed, args.folds,
                                    args.granularity, args.dict_scope, args.jobs);
    spec.features.aux_dimensions = corpus.aux_dimensions;
    spec.n_prev_max = args.n_prev_max;
    for (const auto& m : args.modes)
        spec.modes.push_back(context_mode_from_string(m, args.features.dims));

    ResultTable table;
    std::string streams_csv;
    if (args.protocol == "influence") {
        table = influence_experiment(corpus, spec);
    } else if (args.protocol == "cascade") {
        CascadeResult cascade = cascade_experiment(corpus, spec);
        table = std::move(cascade.table);
        std::ostringstream out;
        out << "stream,label_accuracy\n";
        char buf[32];
        for (const auto& s : cascade.streams) {
            std::snprintf(buf, sizeof(buf), "%.6f", s.label_accuracy);
            out << s.name << "," << buf << "\n";
        }
        streams_csv = out.str();
    } else {
        throw ConfigError("--protocol must be influence or cascade");
    }

    fs::create_directories(args.outdir);
    std::ostringstream grid;
    write_result_csv(table, grid);
    std::ostringstream md;
    write_result_markdown(table, md);
    write_file((fs::path(args.outdir) / "grid.csv").string(), grid.str());
    write_file((fs::path(args.outdir) / "table.md").string(), md.str());
    if (!streams_csv.empty())
        write_file((fs::path(args.outdir) / "streams.csv").string(), streams_csv);

    std::ostringstream manifest;
    manifest << "dakit experiment manifest v1\n";
    manifest << "protocol " << args.protocol << "\n";
    manifest << "format " << args.corpus.format << "\n";
    manifest << "variant " << args.corpus.variant << "\n";
    for (const auto& p : args.corpus.paths) manifest << "corpus " << p << "\n";
    if (!args.corpus.mapping_path.empty())
        manifest << "mapping " << args.corpus.mapping_path << "\n";
    for (const auto& s : args.corpus.speakers) manifest << "speaker-filter " << s << "\n";
    manifest << "markup " << args.features.markup << "\n";
    manifest << "max_n " << args.features.max_n << "\n";
    manifest << "cumulative " << (args.features.specific_n ? 0 : 1) << "\n";
    manifest << "wh " << (args.features.no_wh ? 0 : 1) << "\n";
    manifest << "punct " << (args.features.no_punct ? 0 : 1) << "\n";
    if (args.protocol == "influence")
        for (const auto& m : args.modes) manifest << "mode " << m << "\n";
    manifest << "dims " << args.features.dims << "\n";
    manifest << "n_prev_max " << args.n_prev_max << "\n";
    manifest << "folds " << args.folds << "\n";
    manifest << "granularity " << args.granularity << "\n";
    manifest << "dict " << args.dict_scope << "\n";
    manifest << "seed " << args.seed << "\n";
    manifest << "cost " << format_double(args.solver.cost) << "\n";
    manifest << "tol " << format_double(args.solver.tol) << "\n";
    manifest << "max_epochs " << args.solver.max_epochs << "\n";
    manifest << "bias " << format_double(args.solver.bias) << "\n";
    manifest << hash_line("grid.csv", grid.str()) << "\n";
    manifest << hash_line("table.md", md.str()) << "\n";
    if (!streams_csv.empty()) manifest << hash_line("streams.csv", streams_csv) << "\n";
    write_file((fs::path(args.outdir) / "manifest.txt").string(), manifest.str());

    std::cout << "wrote " << table.rows.size() << " grid rows to " << args.outdir << "\n";
    return 0;
}

struct SignificanceArgs {
    std::string csv_a;
    std::string csv_b;
    std::string mode_a;
    std::string mode_b;
    int n_prev_a = -1;
    int n_prev_b = -1;
};

std::vector<double> read_accuracy_series(const std::string& path, const std::string& mode,
                                         int n_prev) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open result CSV: " + path);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "mode,n_prev,fold,accuracy")
        throw ParseError("bad result CSV header in " + path);
    std::vector<double> series;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split(line, ',');
        if (fields.size() != 4) throw ParseError("bad result CSV row", line_no);
        if (!mode.empty() && fields[0] != mode) continue;
        if (n_prev >= 0 && std::stoi(fields[1]) != n_prev) continue;
        series.push_back(std::strtod(fields[3].c_str(), nullptr));
    }
    if (series.empty())
        throw std::runtime_error("no matching rows in " + path +
                                 (mode.empty() ? "" : " for mode " + mode));
    return series;
}

int run_significance(const SignificanceArgs& args) {
    auto a = read_accuracy_series(args.csv_a, args.mode_a, args.n_prev_a);
    auto b = read_accuracy_series(args.csv_b, args.mode_b, args.n_prev_b);
    SignificanceResult result = wilcoxon(a, b);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", result.p_value);
    std::cout << "n_effective " << result.n_effective << "\n";
    std::cout << "W " << format_double(result.w_statistic) << "\n";
    std::cout << "p_value " << buf << "\n";
    std::cout << "method " << to_string(result.method) << "\n";
    std::cout << "significant " << (result.significant ? "yes" : "no") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dakit: dialog act recognition toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a config file (INI, [subcommand] sections)");

    ParseArgs parse_args;
    auto* parse_cmd =
        app.add_subcommand("parse", "Parse a corpus, dump the uniform segment TSV, and print "
                                    "the label distribution");
    add_corpus_options(parse_cmd, parse_args.corpus);
    parse_cmd->add_option("-o,--out", parse_args.out, "Output dump path (default stdout)");

    FeaturizeArgs feat_args;
    auto* feat_cmd = app.add_subcommand("featurize", "Write the sparse vector dataset");
    add_corpus_options(feat_cmd, feat_args.corpus);
    add_feature_options(feat_cmd, feat_args.features);
    feat_cmd->add_option("-o,--out", feat_args.out, "Output dataset path (default stdout)");
    feat_cmd->add_option("--dict-out", feat_args.dict_out, "Also save the feature dictionary");

    TrainArgs train_args;
    auto* train_cmd = app.add_subcommand("train", "Train a one-vs-rest linear SVM");
    add_corpus_options(train_cmd, train_args.corpus);
    add_feature_options(train_cmd, train_args.features);
    add_solver_options(train_cmd, train_args.solver);
    train_cmd->add_option("--seed", train_args.seed, "Random seed")->required();
    train_cmd->add_option("--jobs", train_args.jobs, "Worker threads");
    train_cmd->add_option("-o,--out", train_args.out, "Model output path")->required();

    PredictArgs predict_args;
    auto* predict_cmd = app.add_subcommand("predict", "Predict labels with a trained model");
    add_corpus_options(predict_cmd, predict_args.corpus);
    predict_cmd->add_option("--model", predict_args.model_path, "Model path")->required();
    predict_cmd->add_option("-o,--out", predict_args.out, "Predictions path (default stdout)");

    CvArgs cv_args;
    auto* cv_cmd = app.add_subcommand("cv", "Cross-validate one configuration");
    add_corpus_options(cv_cmd, cv_args.corpus);
    add_feature_options(cv_cmd, cv_args.features);
    add_solver_options(cv_cmd, cv_args.solver);
    cv_cmd->add_option("--seed", cv_args.seed, "Random seed")->required();
    cv_cmd->add_option("--folds", cv_args.folds, "Number of folds");
    cv_cmd->add_option("--granularity", cv_args.granularity, "Fold unit: dialog or segment");
    cv_cmd->add_option("--dict", cv_args.dict_scope, "Dictionary scope: fold or global");
    cv_cmd->add_option("--jobs", cv_args.jobs, "Worker threads");
    cv_cmd->add_option("-o,--outdir", cv_args.outdir, "Output directory")->required();

    ExperimentArgs exp_args;
    auto* exp_cmd =
        app.add_subcommand("experiment", "Run the influence grid or the cascade protocol");
    add_corpus_options(exp_cmd, exp_args.corpus);
    add_feature_options(exp_cmd, exp_args.features);
    add_solver_options(exp_cmd, exp_args.solver);
    exp_cmd->add_option("--seed", exp_args.seed, "Random seed")->required();
    exp_cmd->add_option("--folds", exp_args.folds, "Number of folds");
    exp_cmd->add_option("--granularity", exp_args.granularity, "Fold unit: dialog or segment");
    exp_cmd->add_option("--dict", exp_args.dict_scope, "Dictionary scope: fold or global");
    exp_cmd->add_option("--jobs", exp_args.jobs, "Worker threads");
    exp_cmd->add_option("--protocol", exp_args.protocol, "influence or cascade");
    exp_cmd->add_option("--modes", exp_args.modes, "Context modes for the influence grid")
        ->delimiter(',');
    exp_cmd->add_option("--n-prev-max", exp_args.n_prev_max, "Largest context depth (<= 5)");
    exp_cmd->add_option("-o,--outdir", exp_args.outdir, "Output directory")->required();

    SignificanceArgs sig_args;
    auto* sig_cmd = app.add_subcommand(
        "significance", "Wilcoxon signed-rank test between two result CSV series");
    sig_cmd->add_option("csv_a", sig_args.csv_a, "First result CSV")->required();
    sig_cmd->add_option("csv_b", sig_args.csv_b, "Second result CSV")->required();
    sig_cmd->add_option("--mode-a", sig_args.mode_a, "Filter first CSV to this mode");
    sig_cmd->add_option("--mode-b", sig_args.mode_b, "Filter second CSV to this mode");
    sig_cmd->add_option("--n-prev-a", sig_args.n_prev_a, "Filter first CSV to this n_prev");
    sig_cmd->add_option("--n-prev-b", sig_args.n_prev_b, "Filter second CSV to this n_prev");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (parse_cmd->parsed()) return run_parse(parse_args);
        if (feat_cmd->parsed()) return run_featurize(feat_args);
        if (train_cmd->parsed()) return run_train(train_args);
        if (predict_cmd->parsed()) return run_predict(predict_args);
        if (cv_cmd->parsed()) return run_cv(cv_args);
        if (exp_cmd->parsed()) return run_experiment(exp_args);
        if (sig_cmd->parsed()) return run_significance(sig_args);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
