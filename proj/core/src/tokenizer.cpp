#include "dakit/tokenizer.hpp"

#include <array>
#include <cctype>

#include "dakit/common.hpp"

namespace dakit {

namespace {

constexpr std::string_view kSplitPunct = ".,?!;:\"()";

constexpr std::array<std::string_view, 11> kAtomicMarkers = {
    "{D", "{F", "{C", "{E", "{A", "}", "[", "]", "+", "/", "-/",
};

bool is_atomic_marker(std::string_view tok) {
    for (auto m : kAtomicMarkers)
        if (tok == m) return true;
    // Angle units: <beep>, <laughter>, <b_aside>, ...
    return tok.size() >= 3 && tok.front() == '<' && tok.back() == '>';
}

void emit_word(std::string_view word, std::vector<std::string>& out) {
    std::string current;
    for (char c : word) {
        if (kSplitPunct.find(c) != std::string_view::npos) {
            if (!current.empty()) {
                out.push_back(std::move(current));
                current.clear();
            }
            out.emplace_back(1, c);
        } else {
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
            current += c;
        }
    }
    if (!current.empty()) out.push_back(std::move(current));
}

}  // namespace

std::string to_string(MarkupMode m) {
    return m == MarkupMode::Split ? "split" : "atomic";
}

MarkupMode markup_mode_from_string(const std::string& s) {
    if (s == "split") return MarkupMode::Split;
    if (s == "atomic") return MarkupMode::Atomic;
    throw ConfigError("unknown markup mode: " + s);
}

std::vector<std::string> normalize(std::string_view raw_text, MarkupMode mode) {
    std::vector<std::string> tokens;
    tokens.emplace_back(kSentenceStart);

    std::size_t i = 0;
    while (i < raw_text.size()) {
        while (i < raw_text.size() && std::isspace(static_cast<unsigned char>(raw_text[i]))) ++i;
        std::size_t j = i;
        while (j < raw_text.size() && !std::isspace(static_cast<unsigned char>(raw_text[j]))) ++j;
        if (j == i) break;
        std::string_view word = raw_text.substr(i, j - i);
        if (mode == MarkupMode::Atomic && is_atomic_marker(word)) {
            tokens.emplace_back(word);
        } else if (mode == MarkupMode::Atomic && word.front() == '<' &&
                   word.find('>') != std::string_view::npos) {
            // Angle unit with attached trailing punctuation: `<beep>.`
            std::size_t close = word.find('>') + 1;
            tokens.emplace_back(word.substr(0, close));
            emit_word(word.substr(close), tokens);
        } else {
            emit_word(word, tokens);
        }
        i = j;
    }

    tokens.emplace_back(kSentenceEnd);
    return tokens;
}

std::string detokenize(std::span<const std::string> tokens) {
    std::string out;
    for (const auto& tok : tokens) {
        if (tok == kSentenceStart || tok == kSentenceEnd) continue;
        if (!out.empty()) out += ' ';
        out += tok;
    }
    return out;
}

}  // namespace dakit
