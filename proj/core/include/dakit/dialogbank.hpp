#pragma once

#include <iosfwd>

#include "dakit/corpus.hpp"

namespace dakit {

// Parses the simplified DialogBank TSV (one row per functional segment):
//
//   dialog_id <TAB> seg_id <TAB> speaker <TAB> text <TAB> task [<TAB> <dim>...]
//
// Header names the task column `task`; any further columns declare extra
// dimensions whose per-row cells hold that dimension's communicative
// function (empty cell = no function in that dimension). The task function
// becomes the segment label; a row with an empty task cell is kept as
// history only (label `<none>`, not a classification target) provided it
// declares at least one other-dimension function — a row with no function
// anywhere is an error. Conversion from the original DiAML exports into
// this format is a documented preprocessing step, not part of the toolkit.
Corpus parse_dialogbank_tsv(std::istream& in);

// Label used for no-task-function segments in ISO corpora.
inline constexpr const char* kNoTaskLabel = "<none>";

}  // namespace dakit
