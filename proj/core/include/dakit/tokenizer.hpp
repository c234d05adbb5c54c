#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dakit {

inline constexpr const char* kSentenceStart = "<s>";
inline constexpr const char* kSentenceEnd = "</s>";

// How Switchboard transcription markup is tokenized. Split mode processes
// markers like any other word (lowercased, attached punctuation separated).
// Atomic mode keeps the marker inventory — `{D {F {C {E {A } [ ] + / -/`
// and any `<...>` unit such as `<beep>` or `<laughter>` — as single,
// case-preserved tokens.
enum class MarkupMode { Split, Atomic };

std::string to_string(MarkupMode m);
MarkupMode markup_mode_from_string(const std::string& s);

// Normalizes raw segment text into a token sequence: lowercase, the
// punctuation characters . , ? ! ; : " ( ) split into standalone tokens
// (apostrophes stay in-word), `<s>`/`</s>` sentinels at the ends. Empty
// text yields just the sentinels.
std::vector<std::string> normalize(std::string_view raw_text, MarkupMode mode);

// Joins tokens (sentinels excluded) back into a space-separated string.
// normalize(detokenize(tokens), mode) == tokens for normalized input.
std::string detokenize(std::span<const std::string> tokens);

}  // namespace dakit
