#include "dakit/features.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>

#include "dakit/common.hpp"

namespace dakit {

namespace {

constexpr std::array<std::string_view, 9> kWhWords = {
    "who", "whom", "whose", "what", "which", "when", "where", "why", "how",
};

constexpr std::array<std::string_view, 6> kPunctMarks = {"?", "!", ".", ",", ";", ":"};

constexpr const char* kPadLabel = "<pad>";
constexpr const char* kNoFunctionLabel = "<none>";
constexpr const char* kTaskDimension = "task";

void append_ngram_counts(std::span<const std::string> tokens, const NGramSpec& spec,
                         FeatureKeys& out, const std::string& key_prefix) {
    int lo = spec.cumulative ? 1 : spec.max_n;
    std::unordered_map<std::string, std::size_t> slot;
    slot.reserve(tokens.size() * 2);
    for (int n = lo; n <= spec.max_n; ++n) {
        if (tokens.size() < static_cast<std::size_t>(n)) continue;
        for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
            std::string key = key_prefix + std::to_string(n) + ":";
            for (int t = 0; t < n; ++t) {
                if (t > 0) key += ' ';
                key += tokens[i + t];
            }
            auto [it, inserted] = slot.try_emplace(std::move(key), out.size());
            if (inserted)
                out.emplace_back(it->first, 1.0);
            else
                out[it->second].second += 1.0;
        }
    }
}

}  // namespace

void FeatureConfig::validate() const {
    if (ngrams.max_n < 1 || ngrams.max_n > 5)
        throw ConfigError("n-gram order must be in 1..5, got " + std::to_string(ngrams.max_n));
    if (n_prev < 0 || n_prev > 5)
        throw ConfigError("n_prev must be in 0..5, got " + std::to_string(n_prev));
    if (context.kind == ContextKind::None && n_prev != 0)
        throw ConfigError("context mode none requires n_prev = 0");
}

std::uint32_t FeatureDictionary::intern(const std::string& key) {
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    if (frozen_) return kMissing;
    std::uint32_t id = static_cast<std::uint32_t>(keys_.size());
    keys_.push_back(key);
    index_.emplace(key, id);
    return id;
}

std::uint32_t FeatureDictionary::id_of(const std::string& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? kMissing : it->second;
}

void FeatureDictionary::save(std::ostream& out) const {
    out << "dakit-dict v1 " << keys_.size() << "\n";
    for (const auto& key : keys_) out << key << "\n";
}

FeatureDictionary FeatureDictionary::load(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw ParseError("empty dictionary file");
    auto parts = split(header, ' ');
    if (parts.size() != 3 || parts[0] != "dakit-dict" || parts[1] != "v1")
        throw ParseError("bad dictionary header", 1);
    std::size_t n = std::stoul(parts[2]);
    FeatureDictionary dict;
    std::string line;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw ParseError("truncated dictionary file", i + 2);
        dict.intern(line);
    }
    if (dict.size() != n) throw ParseError("dictionary contains duplicate keys");
    dict.freeze();
    return dict;
}

double SparseVector::squared_norm() const {
    double s = 0.0;
    for (const auto& [id, v] : entries) s += v * v;
    return s;
}

FeatureKeys extract_ngrams(std::span<const std::string> tokens, const NGramSpec& spec) {
    FeatureKeys out;
    append_ngram_counts(tokens, spec, out, "");
    return out;
}

std::span<const std::string_view> wh_word_inventory() { return kWhWords; }
std::span<const std::string_view> punctuation_inventory() { return kPunctMarks; }

FeatureKeys base_feature_keys(std::span<const std::string> tokens, const FeatureConfig& cfg) {
    FeatureKeys out;
    append_ngram_counts(tokens, cfg.ngrams, out, "");
    if (cfg.wh_indicators) {
        for (auto wh : kWhWords) {
            if (std::find(tokens.begin(), tokens.end(), wh) != tokens.end())
                out.emplace_back("wh:" + std::string(wh), 1.0);
        }
    }
    if (cfg.punct_indicators) {
        for (auto mark : kPunctMarks) {
            if (std::find(tokens.begin(), tokens.end(), mark) != tokens.end())
                out.emplace_back("punct:" + std::string(mark), 1.0);
        }
    }
    return out;
}

FeatureKeys context_feature_keys(std::span<const Segment* const> history,
                                 const std::optional<ContextLabelTuples>& labels,
                                 const FeatureConfig& cfg) {
    cfg.validate();
    FeatureKeys out;
    if (cfg.context.kind == ContextKind::None || cfg.n_prev == 0) return out;

    if (cfg.context.kind == ContextKind::DALabels) {
        for (int d = 1; d <= cfg.n_prev; ++d) {
            std::string prefix = "da:" + std::to_string(d) + ":";
            if (static_cast<std::size_t>(d) > history.size()) {
                // Before the dialog start: one pad per dimension.
                out.emplace_back(prefix + kTaskDimension + "=" + kPadLabel, 1.0);
                if (cfg.context.dims == DimensionScope::All) {
                    for (const auto& dim : cfg.aux_dimensions)
                        out.emplace_back(prefix + dim + "=" + kPadLabel, 1.0);
                }
                continue;
            }
            if (labels) {
                for (const auto& [dim, label] : (*labels)[d - 1])
                    out.emplace_back(prefix + dim + "=" + label, 1.0);
                continue;
            }
            const Segment& seg = *history[d - 1];
            out.emplace_back(prefix + kTaskDimension + "=" + seg.label, 1.0);
            if (cfg.context.dims == DimensionScope::All) {
                for (const auto& dim : cfg.aux_dimensions) {
                    auto it = seg.aux_labels.find(dim);
                    const std::string& label =
                        it == seg.aux_labels.end() ? std::string(kNoFunctionLabel) : it->second;
                    out.emplace_back(prefix + dim + "=" + label, 1.0);
                }
            }
        }
        return out;
    }

    // N-gram context: untagged keys share the current segment's key space,
    // index-tagged keys live in a per-offset space.
    int available = static_cast<int>(std::min<std::size_t>(history.size(), cfg.n_prev));
    for (int d = 1; d <= available; ++d) {
        auto tokens = normalize(history[d - 1]->raw_text, cfg.markup);
        std::string prefix;
        if (cfg.context.kind == ContextKind::IndexTaggedNGrams)
            prefix = std::to_string(d) + "|";
        append_ngram_counts(tokens, cfg.ngrams, out, prefix);
    }
    return out;
}

SparseVector keys_to_vector(const FeatureKeys& keys, const FeatureDictionary& dict) {
    SparseVector vec;
    vec.entries.reserve(keys.size());
    for (const auto& [key, value] : keys) {
        std::uint32_t id = dict.id_of(key);
        if (id == FeatureDictionary::kMissing) continue;  // OOV: skip
        vec.entries.emplace_back(id, value);
    }
    std::sort(vec.entries.begin(), vec.entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // Merge duplicate ids (untagged context pools with current-segment keys).
    std::size_t w = 0;
    for (std::size_t r = 0; r < vec.entries.size(); ++r) {
        if (w > 0 && vec.entries[w - 1].first == vec.entries[r].first)
            vec.entries[w - 1].second += vec.entries[r].second;
        else
            vec.entries[w++] = vec.entries[r];
    }
    vec.entries.resize(w);
    return vec;
}

SparseVector base_vector(std::span<const std::string> tokens, const FeatureConfig& cfg,
                         const FeatureDictionary& dict) {
    return keys_to_vector(base_feature_keys(tokens, cfg), dict);
}

SparseVector context_vector(std::span<const Segment* const> history,
                            const std::optional<ContextLabelTuples>& labels,
                            const FeatureConfig& cfg, const FeatureDictionary& dict) {
    return keys_to_vector(context_feature_keys(history, labels, cfg), dict);
}

Vectorizer::Vectorizer(const Corpus& corpus, FeatureConfig cfg)
    : corpus_(&corpus), cfg_(std::move(cfg)) {
    cfg_.validate();
    if (cfg_.context.kind == ContextKind::DALabels && cfg_.context.dims == DimensionScope::All &&
        cfg_.aux_dimensions.empty())
        cfg_.aux_dimensions = corpus.aux_dimensions;

    tokens_.resize(corpus.dialogs.size());
    for (std::uint32_t d = 0; d < corpus.dialogs.size(); ++d) {
        const Dialog& dialog = corpus.dialogs[d];
        tokens_[d].resize(dialog.segments.size());
        for (std::uint32_t s = 0; s < dialog.segments.size(); ++s) {
            tokens_[d][s] = normalize(dialog.segments[s].raw_text, cfg_.markup);
            if (dialog.segments[s].is_target) targets_.push_back({d, s});
        }
    }
    for (std::size_t i = 0; i < corpus.label_set.size(); ++i)
        label_ids_.emplace(corpus.label_set[i], static_cast<int>(i));
}

void Vectorizer::set_predicted_labels(std::vector<std::vector<std::string>> labels) {
    if (labels.size() != corpus_->dialogs.size())
        throw ConfigError("predicted label stream does not align with corpus dialogs");
    for (std::size_t d = 0; d < labels.size(); ++d) {
        if (labels[d].size() != corpus_->dialogs[d].segments.size())
            throw ConfigError("predicted label stream does not align with dialog " +
                              corpus_->dialogs[d].id);
    }
    predicted_ = std::move(labels);
}

FeatureKeys Vectorizer::sample_keys(const SampleRef& sample) const {
    const Dialog& dialog = corpus_->dialogs[sample.dialog];
    FeatureKeys keys = base_feature_keys(tokens_[sample.dialog][sample.seg], cfg_);

    if (cfg_.context.kind == ContextKind::None || cfg_.n_prev == 0) return keys;

    std::vector<const Segment*> history;
    history.reserve(cfg_.n_prev);
    for (int d = 1; d <= cfg_.n_prev && d <= static_cast<int>(sample.seg); ++d)
        history.push_back(&dialog.segments[sample.seg - d]);

    std::optional<ContextLabelTuples> labels;
    if (cfg_.context.kind == ContextKind::DALabels && predicted_) {
        ContextLabelTuples tuples;
        for (std::size_t d = 0; d < history.size(); ++d) {
            std::uint32_t seg_idx = sample.seg - static_cast<std::uint32_t>(d) - 1;
            tuples.push_back({{kTaskDimension, (*predicted_)[sample.dialog][seg_idx]}});
        }
        labels = std::move(tuples);
    }

    FeatureConfig ctx_cfg = cfg_;  // token cache already applied markup
    FeatureKeys ctx;
    if (cfg_.context.kind == ContextKind::DALabels) {
        ctx = context_feature_keys(history, labels, ctx_cfg);
    } else {
        // Reuse the cached tokens instead of re-normalizing.
        int available = static_cast<int>(history.size());
        for (int d = 1; d <= available; ++d) {
            std::string prefix;
            if (cfg_.context.kind == ContextKind::IndexTaggedNGrams)
                prefix = std::to_string(d) + "|";
            std::uint32_t seg_idx = sample.seg - static_cast<std::uint32_t>(d);
            append_ngram_counts(tokens_[sample.dialog][seg_idx], cfg_.ngrams, ctx, prefix);
        }
        // Remaining pads for DALabels are handled inside context_feature_keys.
    }
    keys.insert(keys.end(), std::make_move_iterator(ctx.begin()),
                std::make_move_iterator(ctx.end()));
    return keys;
}

FeatureDictionary Vectorizer::build_dictionary(std::span<const SampleRef> training) const {
    FeatureDictionary dict;
    for (const auto& sample : training) {
        for (const auto& [key, value] : sample_keys(sample)) dict.intern(key);
    }
    dict.freeze();
    return dict;
}

SparseVector Vectorizer::vectorize(const SampleRef& sample, const FeatureDictionary& dict) const {
    return keys_to_vector(sample_keys(sample), dict);
}

int Vectorizer::label_index(const SampleRef& sample) const {
    const Segment& seg = segment(sample);
    auto it = label_ids_.find(seg.label);
    if (it == label_ids_.end())
        throw std::runtime_error("label not in corpus label_set: " + seg.label);
    return it->second;
}

const Segment& Vectorizer::segment(const SampleRef& sample) const {
    return corpus_->dialogs[sample.dialog].segments[sample.seg];
}

std::span<const std::string> Vectorizer::tokens(const SampleRef& sample) const {
    return tokens_[sample.dialog][sample.seg];
}

void write_sparse_dataset(std::ostream& out, const Corpus& corpus, const Vectorizer& vectorizer,
                          const FeatureDictionary& dict) {
    out << "# labels:";
    for (const auto& l : corpus.label_set) out << " " << l;
    out << "\n";
    char buf[64];
    for (const auto& sample : vectorizer.targets()) {
        const Segment& seg = vectorizer.segment(sample);
        SparseVector vec = vectorizer.vectorize(sample, dict);
        out << vectorizer.label_index(sample) << " qid:" << seg.dialog_id;
        for (const auto& [id, value] : vec.entries) {
            std::snprintf(buf, sizeof(buf), "%g", value);
            out << " " << id << ":" << buf;
        }
        out << "\n";
    }
}

}  // namespace dakit
