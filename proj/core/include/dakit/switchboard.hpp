#pragma once

#include <iosfwd>
#include <string>

#include "dakit/corpus.hpp"

namespace dakit {

// Parses one Switchboard-style transcript into a dialog. Line grammar:
//
//   <label> <ws> <speaker>.<turn> <ws> utt<k>: <ws> <text>
//
// e.g. `qy A.1 utt1: Does it say something? /`. Blank lines and lines
// starting with `#` are skipped. Text is preserved verbatim, including
// all disfluency/repetition markup. Malformed lines raise ParseError with
// the line number; a stream with no utterance lines raises ParseError.
Dialog parse_switchboard(std::istream& in, const std::string& dialog_id);

}  // namespace dakit
