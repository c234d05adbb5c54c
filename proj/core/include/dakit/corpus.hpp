#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace dakit {

// One functional segment: the unit of classification. aux_labels holds
// communicative functions in dimensions other than the classification
// target (ISO data only; empty elsewhere). is_target distinguishes
// segments that are classified from segments that only provide dialog
// history (e.g. system turns in user-only mode, or ISO segments without
// a task-dimension function).
struct Segment {
    std::string dialog_id;
    std::string speaker;
    std::uint32_t index = 0;  // 0-based position within the dialog
    std::string raw_text;
    std::string label;
    std::map<std::string, std::string> aux_labels;
    bool is_target = true;

    bool operator==(const Segment&) const = default;
};

struct Dialog {
    std::string id;
    std::vector<Segment> segments;

    bool operator==(const Dialog&) const = default;
};

enum class TagsetVariant { Swda44, Swda43, Swda42, Swda41, IsoTask };

std::string to_string(TagsetVariant v);
TagsetVariant tagset_variant_from_string(const std::string& s);

struct Corpus {
    std::vector<Dialog> dialogs;
    std::vector<std::string> label_set;      // class inventory, fixed order
    TagsetVariant variant = TagsetVariant::IsoTask;
    std::vector<std::string> aux_dimensions; // declared non-target dimensions (ISO)

    std::size_t segment_count() const;
    std::size_t target_count() const;
    // Throws if any invariant is violated (indices, labels, dialog ids).
    void validate() const;

    bool operator==(const Corpus&) const = default;
};

// Maps source labels to target labels; sources in drop_set are removed
// from the corpus instead.
struct LabelMapping {
    std::map<std::string, std::string> entries;
    std::set<std::string> drop_set;

    // Config format: one `source -> target` per line, `source -> DROP`
    // for drops, `#` comments and blank lines skipped.
    static LabelMapping parse(std::istream& in);
    static LabelMapping load(const std::string& path);
};

struct LabelCount {
    std::string label;
    std::size_t count = 0;
    double percent = 0.0;
};

// The SWBD-DAMSL short code inventory with display names, in the order of
// the published distribution table. The "+" continuation code is last.
struct SwdaLabelInfo {
    const char* code;
    const char* display;
};
std::span<const SwdaLabelInfo> swda_label_table();

// Canonical label inventory for a Switchboard tag-set variant
// (44/43/42/41 codes).
std::vector<std::string> swda_label_set(TagsetVariant variant);

// Display name for a code under the given variant ("Disruption" and
// "Statement" for the merged 42/41 classes).
std::string swda_display_name(const std::string& code, TagsetVariant variant);

// Assembles dialogs into a raw Switchboard corpus (variant Swda44,
// canonical 44-code label set). Unknown labels or duplicate dialog ids
// throw.
Corpus make_swda_corpus(std::vector<Dialog> dialogs);

// Assembles a generic corpus: label_set is collected from target segments
// in first-encounter order.
Corpus make_corpus(std::vector<Dialog> dialogs,
                   std::vector<std::string> aux_dimensions = {});

// Applies a tag-set variant transformation:
//   Swda44: validation only.
//   Swda43: "+" continuation segments are appended to the nearest earlier
//           segment by the same speaker and removed. A "+" segment with no
//           same-speaker predecessor is relabeled Uninterpretable instead
//           of dropped, preserving context-history alignment.
//   Swda42: additionally merges Abandoned and Uninterpretable into one
//           disruption class (orphan "+" joins it).
//   Swda41: additionally merges Statement-opinion into Statement-non-opinion.
// Idempotent per variant; re-merging an already-merged corpus is a no-op.
// Moving to a *less* merged variant throws.
Corpus apply_tagset_variant(const Corpus& corpus, TagsetVariant variant);

// Rewrites labels through the mapping, drops segments whose label is in
// drop_set (empty dialogs disappear, remaining segments are re-indexed).
// Labels found in neither table raise an error listing all offenders.
Corpus map_labels(const Corpus& corpus, const LabelMapping& mapping);

// Count/percentage per label over target segments, sorted by descending
// count (ties alphabetical).
std::vector<LabelCount> label_distribution(const Corpus& corpus);

// Marks segments whose speaker matches one of `speakers` as classification
// targets; everything else is kept for history only. "*" matches every
// speaker. The target label inventory is recomputed. Throws if nothing
// matches.
Corpus filter_segments(const Corpus& corpus, std::span<const std::string> speakers);

// Uniform segment dump: the toolkit's own TSV corpus format. Round-trips
// exactly (text fields are backslash-escaped).
void write_corpus_dump(const Corpus& corpus, std::ostream& out);
Corpus parse_corpus_dump(std::istream& in);

}  // namespace dakit
