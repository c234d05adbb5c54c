#include "dakit/corpus.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "dakit/common.hpp"

namespace dakit {

namespace {

constexpr const char* kContinuationCode = "+";
constexpr const char* kAbandonedCode = "%-";
constexpr const char* kUninterpretableCode = "%";
constexpr const char* kOpinionCode = "sv";
constexpr const char* kNonOpinionCode = "sd";

// Order follows the published distribution table (descending frequency);
// the "+" continuation code closes the 44-entry set.
constexpr std::array<SwdaLabelInfo, 44> kSwdaLabels = {{
    {"sd", "Statement-non-opinion"},
    {"b", "Acknowledgement"},
    {"sv", "Statement-opinion"},
    {"aa", "Agreement"},
    {"%-", "Abandoned"},
    {"ba", "Appreciation"},
    {"qy", "Yes-No-Question"},
    {"x", "Non-verbal"},
    {"ny", "Yes Answer"},
    {"fc", "Conventional Closing"},
    {"%", "Uninterpretable"},
    {"qw", "Wh-Question"},
    {"nn", "No Answer"},
    {"bk", "Response Acknowledge"},
    {"h", "Hedge"},
    {"qy^d", "Decl-Yes-No-Question"},
    {"o", "Other"},
    {"bh", "Backchannel-Question"},
    {"^q", "Quotation"},
    {"bf", "Summarize"},
    {"na", "Aff Non-yes Answer"},
    {"ad", "Action Directive"},
    {"^2", "Collab Completion"},
    {"b^m", "Repeat-Phrase"},
    {"qo", "Open-Question"},
    {"qh", "Rhetorical-Question"},
    {"^h", "Hold"},
    {"ar", "Reject"},
    {"ng", "Neg Non-no Answer"},
    {"br", "Non-understanding"},
    {"no", "Other Answer"},
    {"fp", "Conventional Opening"},
    {"qrr", "Or-Clause"},
    {"arp_nd", "Dispreferred Answers"},
    {"t3", "3rd-party-talk"},
    {"oo_co_cc", "Offers / Options"},
    {"t1", "Self-talk"},
    {"bd", "Downplayer"},
    {"aap_am", "Maybe"},
    {"^g", "Tag-Question"},
    {"qw^d", "Decl-Wh-Question"},
    {"fa", "Apology"},
    {"ft", "Thanking"},
    {"+", "Segment"},
}};

int merge_depth(TagsetVariant v) {
    switch (v) {
        case TagsetVariant::Swda44: return 0;
        case TagsetVariant::Swda43: return 1;
        case TagsetVariant::Swda42: return 2;
        case TagsetVariant::Swda41: return 3;
        case TagsetVariant::IsoTask: return -1;
    }
    return -1;
}

std::vector<std::string> labels_from_targets(const std::vector<Dialog>& dialogs) {
    std::vector<std::string> labels;
    std::unordered_set<std::string> seen;
    for (const auto& d : dialogs) {
        for (const auto& s : d.segments) {
            if (s.is_target && seen.insert(s.label).second) labels.push_back(s.label);
        }
    }
    return labels;
}

void reindex(Dialog& dialog) {
    for (std::uint32_t i = 0; i < dialog.segments.size(); ++i) {
        dialog.segments[i].index = i;
        dialog.segments[i].dialog_id = dialog.id;
    }
}

std::string escape_field(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    return out;
}

std::string unescape_field(std::string_view s, std::size_t line) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\') {
            out += s[i];
            continue;
        }
        if (i + 1 >= s.size()) throw ParseError("dangling escape", line);
        switch (s[++i]) {
            case '\\': out += '\\'; break;
            case 't': out += '\t'; break;
            case 'n': out += '\n'; break;
            case 'r': out += '\r'; break;
            default: throw ParseError("unknown escape sequence", line);
        }
    }
    return out;
}

}  // namespace

std::string to_string(TagsetVariant v) {
    switch (v) {
        case TagsetVariant::Swda44: return "swda44";
        case TagsetVariant::Swda43: return "swda43";
        case TagsetVariant::Swda42: return "swda42";
        case TagsetVariant::Swda41: return "swda41";
        case TagsetVariant::IsoTask: return "iso-task";
    }
    return "?";
}

TagsetVariant tagset_variant_from_string(const std::string& s) {
    if (s == "swda44") return TagsetVariant::Swda44;
    if (s == "swda43") return TagsetVariant::Swda43;
    if (s == "swda42") return TagsetVariant::Swda42;
    if (s == "swda41") return TagsetVariant::Swda41;
    if (s == "iso-task") return TagsetVariant::IsoTask;
    throw ConfigError("unknown tag-set variant: " + s);
}

std::size_t Corpus::segment_count() const {
    std::size_t n = 0;
    for (const auto& d : dialogs) n += d.segments.size();
    return n;
}

std::size_t Corpus::target_count() const {
    std::size_t n = 0;
    for (const auto& d : dialogs)
        for (const auto& s : d.segments)
            if (s.is_target) ++n;
    return n;
}

void Corpus::validate() const {
    std::unordered_set<std::string> ids;
    std::unordered_set<std::string> labels(label_set.begin(), label_set.end());
    if (labels.size() != label_set.size())
        throw std::runtime_error("corpus label_set contains duplicates");
    for (const auto& d : dialogs) {
        if (d.segments.empty()) throw std::runtime_error("empty dialog: " + d.id);
        if (!ids.insert(d.id).second) throw std::runtime_error("duplicate dialog id: " + d.id);
        for (std::uint32_t i = 0; i < d.segments.size(); ++i) {
            const Segment& s = d.segments[i];
            if (s.index != i)
                throw std::runtime_error("non-consecutive segment index in dialog " + d.id);
            if (s.dialog_id != d.id)
                throw std::runtime_error("segment dialog_id mismatch in dialog " + d.id);
            if (s.is_target && !labels.count(s.label))
                throw std::runtime_error("target label not in label_set: " + s.label);
        }
    }
}

LabelMapping LabelMapping::parse(std::istream& in) {
    LabelMapping mapping;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view v = trim(line);
        if (v.empty() || v.front() == '#') continue;
        std::size_t arrow = v.find("->");
        if (arrow == std::string_view::npos)
            throw ParseError("expected `source -> target`", line_no);
        std::string source(trim(v.substr(0, arrow)));
        std::string target(trim(v.substr(arrow + 2)));
        if (source.empty() || target.empty())
            throw ParseError("empty source or target label", line_no);
        if (mapping.entries.count(source) || mapping.drop_set.count(source))
            throw ParseError("duplicate mapping for label: " + source, line_no);
        if (target == "DROP")
            mapping.drop_set.insert(source);
        else
            mapping.entries.emplace(std::move(source), std::move(target));
    }
    return mapping;
}

LabelMapping LabelMapping::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open mapping file: " + path);
    return parse(in);
}

std::span<const SwdaLabelInfo> swda_label_table() { return kSwdaLabels; }

std::vector<std::string> swda_label_set(TagsetVariant variant) {
    int depth = merge_depth(variant);
    if (depth < 0) throw ConfigError("not a Switchboard variant: " + to_string(variant));
    std::vector<std::string> labels;
    for (const auto& info : kSwdaLabels) {
        std::string code = info.code;
        if (depth >= 1 && code == kContinuationCode) continue;
        if (depth >= 2 && code == kAbandonedCode) continue;
        if (depth >= 3 && code == kOpinionCode) continue;
        labels.push_back(std::move(code));
    }
    return labels;
}

std::string swda_display_name(const std::string& code, TagsetVariant variant) {
    int depth = merge_depth(variant);
    if (depth >= 2 && code == kUninterpretableCode) return "Disruption";
    if (depth >= 3 && code == kNonOpinionCode) return "Statement";
    for (const auto& info : kSwdaLabels) {
        if (code == info.code) return info.display;
    }
    throw std::runtime_error("unknown Switchboard label code: " + code);
}

Corpus make_swda_corpus(std::vector<Dialog> dialogs) {
    Corpus corpus;
    corpus.variant = TagsetVariant::Swda44;
    corpus.label_set = swda_label_set(TagsetVariant::Swda44);
    std::unordered_set<std::string> known(corpus.label_set.begin(), corpus.label_set.end());
    for (auto& d : dialogs) {
        reindex(d);
        for (const auto& s : d.segments) {
            if (!known.count(s.label))
                throw std::runtime_error("unknown Switchboard label code: " + s.label +
                                         " (dialog " + d.id + ")");
        }
    }
    corpus.dialogs = std::move(dialogs);
    corpus.validate();
    return corpus;
}

Corpus make_corpus(std::vector<Dialog> dialogs, std::vector<std::string> aux_dimensions) {
    Corpus corpus;
    corpus.variant = TagsetVariant::IsoTask;
    for (auto& d : dialogs) reindex(d);
    corpus.label_set = labels_from_targets(dialogs);
    corpus.dialogs = std::move(dialogs);
    corpus.aux_dimensions = std::move(aux_dimensions);
    corpus.validate();
    return corpus;
}

Corpus apply_tagset_variant(const Corpus& corpus, TagsetVariant variant) {
    int target_depth = merge_depth(variant);
    int source_depth = merge_depth(corpus.variant);
    if (target_depth < 0 || source_depth < 0) {
        if (variant == corpus.variant) return corpus;
        throw ConfigError("apply_tagset_variant: " + to_string(corpus.variant) + " -> " +
                          to_string(variant) + " is not a Switchboard merge");
    }
    if (target_depth < source_depth)
        throw ConfigError("cannot unmerge " + to_string(corpus.variant) + " back to " +
                          to_string(variant));

    std::unordered_set<std::string> known;
    for (const auto& info : kSwdaLabels) known.insert(info.code);

    Corpus out;
    out.variant = variant;
    out.label_set = swda_label_set(variant);
    out.dialogs.reserve(corpus.dialogs.size());

    for (const auto& dialog : corpus.dialogs) {
        Dialog merged{dialog.id, {}};
        merged.segments.reserve(dialog.segments.size());
        for (const Segment& seg : dialog.segments) {
            if (!known.count(seg.label))
                throw std::runtime_error("unknown Switchboard label code: " + seg.label +
                                         " (dialog " + dialog.id + ")");
            Segment s = seg;
            if (target_depth >= 1 && s.label == kContinuationCode) {
                // Nearest earlier same-speaker segment, across intervening
                // other-speaker material.
                Segment* host = nullptr;
                for (auto it = merged.segments.rbegin(); it != merged.segments.rend(); ++it) {
                    if (it->speaker == s.speaker) {
                        host = &*it;
                        break;
                    }
                }
                if (host) {
                    host->raw_text += " " + s.raw_text;
                    continue;
                }
                // Orphan continuation: keep the segment so history offsets
                // stay aligned, relabeled as uninterpretable material.
                s.label = kUninterpretableCode;
            }
            if (target_depth >= 2 && s.label == kAbandonedCode) s.label = kUninterpretableCode;
            if (target_depth >= 3 && s.label == kOpinionCode) s.label = kNonOpinionCode;
            merged.segments.push_back(std::move(s));
        }
        reindex(merged);
        out.dialogs.push_back(std::move(merged));
    }
    out.aux_dimensions = corpus.aux_dimensions;
    out.validate();
    return out;
}

Corpus map_labels(const Corpus& corpus, const LabelMapping& mapping) {
    std::set<std::string> unmapped;
    for (const auto& d : corpus.dialogs) {
        for (const auto& s : d.segments) {
            if (!mapping.entries.count(s.label) && !mapping.drop_set.count(s.label))
                unmapped.insert(s.label);
        }
    }
    if (!unmapped.empty()) {
        std::string msg = "unmapped labels:";
        for (const auto& l : unmapped) msg += " " + l;
        throw std::runtime_error(msg);
    }

    std::vector<Dialog> dialogs;
    dialogs.reserve(corpus.dialogs.size());
    for (const auto& d : corpus.dialogs) {
        Dialog nd{d.id, {}};
        for (const auto& s : d.segments) {
            if (mapping.drop_set.count(s.label)) continue;
            Segment ns = s;
            ns.label = mapping.entries.at(s.label);
            nd.segments.push_back(std::move(ns));
        }
        if (!nd.segments.empty()) {
            reindex(nd);
            dialogs.push_back(std::move(nd));
        }
    }

    Corpus out;
    out.variant = corpus.variant;
    out.aux_dimensions = corpus.aux_dimensions;
    out.label_set = labels_from_targets(dialogs);
    out.dialogs = std::move(dialogs);
    out.validate();
    return out;
}

std::vector<LabelCount> label_distribution(const Corpus& corpus) {
    std::unordered_map<std::string, std::size_t> counts;
    std::size_t total = 0;
    for (const auto& d : corpus.dialogs) {
        for (const auto& s : d.segments) {
            if (!s.is_target) continue;
            ++counts[s.label];
            ++total;
        }
    }
    std::vector<LabelCount> table;
    table.reserve(counts.size());
    for (auto& [label, count] : counts)
        table.push_back({label, count, 100.0 * static_cast<double>(count) / static_cast<double>(total)});
    std::sort(table.begin(), table.end(), [](const LabelCount& a, const LabelCount& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.label < b.label;
    });
    return table;
}

Corpus filter_segments(const Corpus& corpus, std::span<const std::string> speakers) {
    bool match_all = false;
    std::unordered_set<std::string> wanted;
    for (const auto& s : speakers) {
        if (s == "*") match_all = true;
        wanted.insert(s);
    }
    Corpus out = corpus;
    std::size_t matched = 0;
    for (auto& d : out.dialogs) {
        for (auto& s : d.segments) {
            bool hit = match_all || wanted.count(s.speaker) > 0;
            // A segment can only be a target if it had a proper label to
            // begin with (ISO no-task segments stay history-only).
            s.is_target = hit && s.is_target;
            if (hit) ++matched;
        }
    }
    if (matched == 0) throw std::runtime_error("speaker filter matched no segments");
    out.label_set = labels_from_targets(out.dialogs);
    out.validate();
    return out;
}

void write_corpus_dump(const Corpus& corpus, std::ostream& out) {
    out << "#dakit-corpus v1\n";
    out << "#variant\t" << to_string(corpus.variant) << "\n";
    out << "#labels";
    for (const auto& l : corpus.label_set) out << "\t" << escape_field(l);
    out << "\n";
    if (!corpus.aux_dimensions.empty()) {
        out << "#dims";
        for (const auto& d : corpus.aux_dimensions) out << "\t" << escape_field(d);
        out << "\n";
    }
    for (const auto& d : corpus.dialogs) {
        for (const auto& s : d.segments) {
            out << escape_field(d.id) << "\t" << s.index << "\t" << escape_field(s.speaker)
                << "\t" << (s.is_target ? 1 : 0) << "\t" << escape_field(s.label) << "\t";
            if (s.aux_labels.empty()) {
                out << "-";
            } else {
                bool first = true;
                for (const auto& [dim, label] : s.aux_labels) {
                    if (!first) out << "|";
                    out << escape_field(dim) << "=" << escape_field(label);
                    first = false;
                }
            }
            out << "\t" << escape_field(s.raw_text) << "\n";
        }
    }
}

Corpus parse_corpus_dump(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError("empty corpus dump");
    ++line_no;
    if (trim(line) != "#dakit-corpus v1")
        throw ParseError("bad corpus dump header (expected `#dakit-corpus v1`)", line_no);

    Corpus corpus;
    bool have_variant = false;
    std::vector<Dialog> dialogs;
    std::unordered_map<std::string, std::size_t> dialog_index;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto fields = split(line, '\t');
            if (fields[0] == "#variant" && fields.size() == 2) {
                corpus.variant = tagset_variant_from_string(fields[1]);
                have_variant = true;
            } else if (fields[0] == "#labels") {
                for (std::size_t i = 1; i < fields.size(); ++i)
                    corpus.label_set.push_back(unescape_field(fields[i], line_no));
            } else if (fields[0] == "#dims") {
                for (std::size_t i = 1; i < fields.size(); ++i)
                    corpus.aux_dimensions.push_back(unescape_field(fields[i], line_no));
            } else {
                throw ParseError("unknown corpus dump directive: " + fields[0], line_no);
            }
            continue;
        }
        auto fields = split(line, '\t');
        if (fields.size() != 7)
            throw ParseError("expected 7 tab-separated fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        Segment seg;
        seg.dialog_id = unescape_field(fields[0], line_no);
        seg.index = static_cast<std::uint32_t>(std::stoul(fields[1]));
        seg.speaker = unescape_field(fields[2], line_no);
        if (fields[3] != "0" && fields[3] != "1")
            throw ParseError("target flag must be 0 or 1", line_no);
        seg.is_target = fields[3] == "1";
        seg.label = unescape_field(fields[4], line_no);
        if (fields[5] != "-") {
            for (const auto& pair : split(fields[5], '|')) {
                std::size_t eq = pair.find('=');
                if (eq == std::string::npos)
                    throw ParseError("bad aux label entry: " + pair, line_no);
                seg.aux_labels[unescape_field(pair.substr(0, eq), line_no)] =
                    unescape_field(pair.substr(eq + 1), line_no);
            }
        }
        seg.raw_text = unescape_field(fields[6], line_no);

        auto [it, inserted] = dialog_index.try_emplace(seg.dialog_id, dialogs.size());
        if (inserted) dialogs.push_back(Dialog{seg.dialog_id, {}});
        dialogs[it->second].segments.push_back(std::move(seg));
    }
    if (!have_variant) throw ParseError("corpus dump missing #variant directive");
    corpus.dialogs = std::move(dialogs);
    corpus.validate();
    return corpus;
}

}  // namespace dakit
