#include "dakit/lego.hpp"

#include <istream>
#include <unordered_map>
#include <unordered_set>

#include "dakit/common.hpp"

namespace dakit {

namespace {

// Minimal delimited-row reader: plain split for tab files, RFC-4180-style
// double-quoted fields for comma files. Fields may not span lines.
std::vector<std::string> parse_row(const std::string& line, char delim, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty() && delim == ',') {
            in_quotes = true;
        } else if (c == delim) {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    if (in_quotes) throw ParseError("unterminated quoted field", line_no);
    fields.push_back(std::move(field));
    return fields;
}

}  // namespace

Corpus parse_lego(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError("empty LEGO export");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    char delim = line.find('\t') != std::string::npos ? '\t' : ',';
    auto header = parse_row(line, delim, line_no);
    const std::vector<std::string> expected = {"call_id", "turn_index", "side", "transcript",
                                               "da_label"};
    if (header != expected)
        throw ParseError("bad LEGO header, expected call_id,turn_index,side,transcript,da_label",
                         line_no);

    std::vector<Dialog> dialogs;
    std::unordered_map<std::string, std::size_t> call_index;
    std::unordered_set<std::string> seen_turns;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto fields = parse_row(line, delim, line_no);
        if (fields.size() != 5)
            throw ParseError("expected 5 fields, got " + std::to_string(fields.size()), line_no);
        const std::string& call_id = fields[0];
        const std::string& turn_index = fields[1];
        const std::string& side = fields[2];
        if (side != "System" && side != "User")
            throw ParseError("unknown side `" + side + "` (expected System or User)", line_no);
        std::string turn_key = call_id + "\x1f" + turn_index;
        if (!seen_turns.insert(turn_key).second)
            throw ParseError("duplicate turn " + turn_index + " in call " + call_id, line_no);

        auto [it, inserted] = call_index.try_emplace(call_id, dialogs.size());
        if (inserted) dialogs.push_back(Dialog{call_id, {}});
        Dialog& dialog = dialogs[it->second];

        Segment seg;
        seg.dialog_id = call_id;
        seg.speaker = side;
        seg.index = static_cast<std::uint32_t>(dialog.segments.size());
        seg.raw_text = fields[3];
        seg.label = fields[4];
        dialog.segments.push_back(std::move(seg));
    }
    if (dialogs.empty()) throw ParseError("LEGO export contains no rows");
    return make_corpus(std::move(dialogs));
}

}  // namespace dakit
