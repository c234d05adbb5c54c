#pragma once

#include <iosfwd>

#include "dakit/corpus.hpp"

namespace dakit {

// Parses a LEGO-style delimited export. Header must be exactly
// `call_id,turn_index,side,transcript,da_label` (comma- or tab-separated;
// the delimiter is sniffed from the header line, and comma files may use
// double-quoted fields). Each row becomes one segment; rows group into one
// dialog per call_id in order of first appearance. side must be System or
// User. turn_index is an opaque string that must be unique within a call
// (multi-utterance turns carry a sub-index like `7.2`); duplicates raise
// an error. Transcripts are preserved verbatim: templated System prompts
// keep casing and punctuation, User rows are the raw uppercase ASR output.
// Labels are the corpus's original domain-dependent tags; run the result
// through map_labels to reach the standard communicative functions.
Corpus parse_lego(std::istream& in);

}  // namespace dakit
