#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dakit/corpus.hpp"
#include "dakit/tokenizer.hpp"

namespace dakit {

// Which n-gram orders to extract: orders 1..max_n when cumulative, only
// max_n otherwise. The default (cumulative bigrams) is the strongest cell
// of the n-gram selection sweep.
struct NGramSpec {
    int max_n = 2;
    bool cumulative = true;
};

enum class ContextKind { None, UntaggedNGrams, IndexTaggedNGrams, DALabels };
enum class LabelSource { Manual, Predicted };
enum class DimensionScope { TaskOnly, All };

struct ContextMode {
    ContextKind kind = ContextKind::None;
    LabelSource label_source = LabelSource::Manual;  // DALabels only
    DimensionScope dims = DimensionScope::TaskOnly;  // DALabels only

    static ContextMode none() { return {}; }
    static ContextMode untagged() { return {ContextKind::UntaggedNGrams}; }
    static ContextMode indexed() { return {ContextKind::IndexTaggedNGrams}; }
    static ContextMode da_labels(LabelSource src = LabelSource::Manual,
                                 DimensionScope dims = DimensionScope::TaskOnly) {
        return {ContextKind::DALabels, src, dims};
    }
};

// Everything that determines how a segment turns into a vector.
struct FeatureConfig {
    NGramSpec ngrams;
    MarkupMode markup = MarkupMode::Split;
    ContextMode context;
    int n_prev = 0;  // preceding segments to draw context from, 0..5
    bool wh_indicators = true;
    bool punct_indicators = true;
    std::vector<std::string> aux_dimensions;  // corpus-declared, for DALabels/All

    void validate() const;
};

// Feature-key -> dense id map. Ids are assigned in first-encounter order
// over a deterministic traversal and never change; once frozen the
// dictionary stops growing and unknown keys vectorize to nothing.
class FeatureDictionary {
public:
    static constexpr std::uint32_t kMissing = UINT32_MAX;

    std::uint32_t intern(const std::string& key);  // adds when not frozen
    std::uint32_t id_of(const std::string& key) const;  // kMissing if absent
    const std::string& key_of(std::uint32_t id) const { return keys_.at(id); }
    std::size_t size() const { return keys_.size(); }
    bool frozen() const { return frozen_; }
    void freeze() { frozen_ = true; }

    void save(std::ostream& out) const;
    static FeatureDictionary load(std::istream& in);  // loads frozen

private:
    std::unordered_map<std::string, std::uint32_t> index_;
    std::vector<std::string> keys_;
    bool frozen_ = false;
};

// (feature id, value) pairs, id-sorted and unique, values > 0.
struct SparseVector {
    std::vector<std::pair<std::uint32_t, double>> entries;

    double squared_norm() const;
    bool operator==(const SparseVector&) const = default;
};

// Key/weight pairs in deterministic first-encounter order; the string-level
// representation vectors are assembled from.
using FeatureKeys = std::vector<std::pair<std::string, double>>;

// All contiguous n-token windows for each included order, counted. Keys
// are `<n>:<tokens joined by space>` and appear in first-encounter order.
FeatureKeys extract_ngrams(std::span<const std::string> tokens, const NGramSpec& spec);

// Wh-word and punctuation inventories behind the binary indicator features.
std::span<const std::string_view> wh_word_inventory();
std::span<const std::string_view> punctuation_inventory();

// Current-segment features: n-gram counts plus `wh:<word>` / `punct:<mark>`
// presence indicators.
FeatureKeys base_feature_keys(std::span<const std::string> tokens, const FeatureConfig& cfg);

// Per-offset (dimension, label) tuples for DALabels context; outer index is
// offset-1. Used to substitute predicted labels for the manual annotations.
using ContextLabelTuples = std::vector<std::vector<std::pair<std::string, std::string>>>;

// Context features for the n_prev preceding segments, most recent first.
// UntaggedNGrams pools the history's n-gram keys with the current segment's;
// IndexTaggedNGrams prefixes each key with the segment's offset (`d|...`);
// DALabels emits one `da:<d>:<dim>=<label>` indicator per offset and
// dimension, with `<pad>` standing in for offsets before the dialog start
// and `<none>` for a missing function in a dimension. When `labels` is
// provided it overrides the labels read from the history segments.
FeatureKeys context_feature_keys(std::span<const Segment* const> history,
                                 const std::optional<ContextLabelTuples>& labels,
                                 const FeatureConfig& cfg);

// Map keys through the dictionary (unknown keys skipped when frozen),
// merging duplicate ids by summing values.
SparseVector keys_to_vector(const FeatureKeys& keys, const FeatureDictionary& dict);

// Spec-level convenience wrappers over the key functions.
SparseVector base_vector(std::span<const std::string> tokens, const FeatureConfig& cfg,
                         const FeatureDictionary& dict);
SparseVector context_vector(std::span<const Segment* const> history,
                            const std::optional<ContextLabelTuples>& labels,
                            const FeatureConfig& cfg, const FeatureDictionary& dict);

// Binds a corpus to a feature configuration: caches token sequences,
// enumerates classification targets, and produces dictionaries and sample
// vectors. Immutable after construction; safe to share across threads.
class Vectorizer {
public:
    struct SampleRef {
        std::uint32_t dialog = 0;
        std::uint32_t seg = 0;
        bool operator==(const SampleRef&) const = default;
    };

    Vectorizer(const Corpus& corpus, FeatureConfig cfg);

    const Corpus& corpus() const { return *corpus_; }
    const FeatureConfig& config() const { return cfg_; }
    const std::vector<SampleRef>& targets() const { return targets_; }

    // Replaces manual task labels with a predicted stream when building
    // DALabels context features; `labels[d][s]` must align with the corpus.
    void set_predicted_labels(std::vector<std::vector<std::string>> labels);

    // First-encounter-order dictionary over the given training samples.
    FeatureDictionary build_dictionary(std::span<const SampleRef> training) const;

    SparseVector vectorize(const SampleRef& sample, const FeatureDictionary& dict) const;

    int label_index(const SampleRef& sample) const;
    const Segment& segment(const SampleRef& sample) const;
    std::span<const std::string> tokens(const SampleRef& sample) const;

private:
    FeatureKeys sample_keys(const SampleRef& sample) const;

    const Corpus* corpus_;
    FeatureConfig cfg_;
    std::vector<std::vector<std::vector<std::string>>> tokens_;  // [dialog][seg]
    std::vector<SampleRef> targets_;
    std::unordered_map<std::string, int> label_ids_;
    std::optional<std::vector<std::vector<std::string>>> predicted_;
};

// Sparse text export, one sample per line:
//   <class-index> qid:<dialog-id> <id>:<value> ...   (ids ascending)
// A leading comment line records the label inventory.
void write_sparse_dataset(std::ostream& out, const Corpus& corpus, const Vectorizer& vectorizer,
                          const FeatureDictionary& dict);

}  // namespace dakit
