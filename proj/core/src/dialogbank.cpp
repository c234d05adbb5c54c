#include "dakit/dialogbank.hpp"

#include <istream>
#include <unordered_map>

#include "dakit/common.hpp"

namespace dakit {

Corpus parse_dialogbank_tsv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError("empty DialogBank export");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    auto header = split(line, '\t');
    if (header.size() < 5 || header[0] != "dialog_id" || header[1] != "seg_id" ||
        header[2] != "speaker" || header[3] != "text" || header[4] != "task")
        throw ParseError("bad DialogBank header, expected dialog_id seg_id speaker text task ...",
                         line_no);
    std::vector<std::string> dims(header.begin() + 5, header.end());

    std::vector<Dialog> dialogs;
    std::unordered_map<std::string, std::size_t> dialog_index;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto fields = split(line, '\t');
        if (fields.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        if (fields[1].empty()) throw ParseError("empty seg_id", line_no);

        Segment seg;
        seg.dialog_id = fields[0];
        seg.speaker = fields[2];
        seg.raw_text = fields[3];
        bool has_function = false;
        if (!fields[4].empty()) {
            seg.label = fields[4];
            has_function = true;
        } else {
            seg.label = kNoTaskLabel;
            seg.is_target = false;
        }
        for (std::size_t i = 0; i < dims.size(); ++i) {
            const std::string& cell = fields[5 + i];
            if (cell.empty()) continue;
            seg.aux_labels[dims[i]] = cell;
            has_function = true;
        }
        if (!has_function)
            throw ParseError("segment declares no function in any dimension", line_no);

        auto [it, inserted] = dialog_index.try_emplace(seg.dialog_id, dialogs.size());
        if (inserted) dialogs.push_back(Dialog{seg.dialog_id, {}});
        Dialog& dialog = dialogs[it->second];
        seg.index = static_cast<std::uint32_t>(dialog.segments.size());
        dialog.segments.push_back(std::move(seg));
    }
    if (dialogs.empty()) throw ParseError("DialogBank export contains no rows");
    return make_corpus(std::move(dialogs), std::move(dims));
}

}  // namespace dakit
