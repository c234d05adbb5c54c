#include "dakit/switchboard.hpp"

#include <cctype>
#include <istream>

#include "dakit/common.hpp"

namespace dakit {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Dialog parse_switchboard(std::istream& in, const std::string& dialog_id) {
    Dialog dialog{dialog_id, {}};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view v = trim(line);
        if (v.empty() || v.front() == '#') continue;

        // <label>
        std::size_t ws1 = v.find_first_of(" \t");
        if (ws1 == std::string_view::npos)
            throw ParseError("expected `<label> <speaker>.<turn> utt<k>: <text>`", line_no);
        std::string label(v.substr(0, ws1));
        std::string_view rest = trim(v.substr(ws1));

        // <speaker>.<turn>
        std::size_t ws2 = rest.find_first_of(" \t");
        if (ws2 == std::string_view::npos)
            throw ParseError("missing utterance field after speaker", line_no);
        std::string_view spk_turn = rest.substr(0, ws2);
        std::size_t dot = spk_turn.rfind('.');
        if (dot == std::string_view::npos || dot == 0 || !all_digits(spk_turn.substr(dot + 1)))
            throw ParseError("expected `<speaker>.<turn>`, got `" + std::string(spk_turn) + "`",
                             line_no);
        std::string speaker(spk_turn.substr(0, dot));
        rest = trim(rest.substr(ws2));

        // utt<k>:
        std::size_t ws3 = rest.find_first_of(" \t");
        std::string_view utt = ws3 == std::string_view::npos ? rest : rest.substr(0, ws3);
        if (utt.size() < 5 || utt.substr(0, 3) != "utt" || utt.back() != ':' ||
            !all_digits(utt.substr(3, utt.size() - 4)))
            throw ParseError("expected `utt<k>:`, got `" + std::string(utt) + "`", line_no);
        std::string_view text =
            ws3 == std::string_view::npos ? std::string_view{} : trim(rest.substr(ws3));

        Segment seg;
        seg.dialog_id = dialog_id;
        seg.speaker = std::move(speaker);
        seg.index = static_cast<std::uint32_t>(dialog.segments.size());
        seg.raw_text = std::string(text);
        seg.label = std::move(label);
        dialog.segments.push_back(std::move(seg));
    }
    if (dialog.segments.empty())
        throw ParseError("no utterance lines in dialog " + dialog_id);
    return dialog;
}

}  // namespace dakit
