#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "dakit/corpus.hpp"

namespace dakit {

// Dialog granularity keeps whole dialogs together (no adjacent-segment
// leakage across the train/test line); segment granularity assigns each
// segment independently for closer comparability with per-utterance
// evaluation setups.
enum class FoldGranularity { Dialog, Segment };

std::string to_string(FoldGranularity g);
FoldGranularity fold_granularity_from_string(const std::string& s);

struct FoldAssignment {
    int k = 0;
    FoldGranularity granularity = FoldGranularity::Dialog;
    std::uint64_t seed = 0;
    // unit id -> fold index. Units are dialog ids, or `<dialog>:<index>`
    // at segment granularity.
    std::unordered_map<std::string, int> assignment;

    int fold_of(const Segment& seg) const;
    static std::string segment_unit_id(const Segment& seg);
};

// Seeded uniform shuffle of the unit list (in corpus order) followed by
// round-robin assignment, so fold sizes differ by at most one unit.
// Deterministic given (corpus order, k, seed). k must be >= 2 and at most
// the number of units.
FoldAssignment make_folds(const Corpus& corpus, int k, std::uint64_t seed,
                          FoldGranularity granularity = FoldGranularity::Dialog);

}  // namespace dakit
