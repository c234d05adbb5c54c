#include "dakit/folds.hpp"

#include "dakit/common.hpp"

namespace dakit {

std::string to_string(FoldGranularity g) {
    return g == FoldGranularity::Dialog ? "dialog" : "segment";
}

FoldGranularity fold_granularity_from_string(const std::string& s) {
    if (s == "dialog") return FoldGranularity::Dialog;
    if (s == "segment") return FoldGranularity::Segment;
    throw ConfigError("unknown fold granularity: " + s);
}

std::string FoldAssignment::segment_unit_id(const Segment& seg) {
    return seg.dialog_id + ":" + std::to_string(seg.index);
}

int FoldAssignment::fold_of(const Segment& seg) const {
    const std::string unit =
        granularity == FoldGranularity::Dialog ? seg.dialog_id : segment_unit_id(seg);
    auto it = assignment.find(unit);
    if (it == assignment.end())
        throw std::runtime_error("segment not covered by fold assignment: " + unit);
    return it->second;
}

FoldAssignment make_folds(const Corpus& corpus, int k, std::uint64_t seed,
                          FoldGranularity granularity) {
    if (k < 2) throw ConfigError("fold count must be at least 2, got " + std::to_string(k));

    std::vector<std::string> units;
    if (granularity == FoldGranularity::Dialog) {
        units.reserve(corpus.dialogs.size());
        for (const auto& d : corpus.dialogs) units.push_back(d.id);
    } else {
        units.reserve(corpus.segment_count());
        for (const auto& d : corpus.dialogs)
            for (const auto& s : d.segments) units.push_back(FoldAssignment::segment_unit_id(s));
    }
    if (static_cast<std::size_t>(k) > units.size())
        throw ConfigError("fold count " + std::to_string(k) + " exceeds unit count " +
                          std::to_string(units.size()));

    deterministic_shuffle(units, seed);

    FoldAssignment folds;
    folds.k = k;
    folds.granularity = granularity;
    folds.seed = seed;
    folds.assignment.reserve(units.size());
    for (std::size_t i = 0; i < units.size(); ++i)
        folds.assignment.emplace(std::move(units[i]), static_cast<int>(i % k));
    return folds;
}

}  // namespace dakit
