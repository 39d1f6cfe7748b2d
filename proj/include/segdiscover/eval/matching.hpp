#pragma once

#include <cstdint>
#include <vector>

#include "segdiscover/eval/confusion.hpp"

namespace segdiscover::eval {

enum class MatchingKind { Majority, Hungarian };

struct Matching {
    static constexpr int kUnmatched = -1;

    MatchingKind kind = MatchingKind::Majority;
    std::vector<int> group_to_class;  // per predicted group; kUnmatched allowed for Hungarian
    std::vector<bool> flagged;        // majority: group had no pixels (mapped to class 0)
};

/// Many-to-one: each group takes the class holding its plurality of pixels
/// (ties to the lowest class id). Empty groups map to class 0 and are flagged.
Matching majority_match(const ConfusionMatrix& cm);

/// One-to-one assignment maximising matched pixels. Rectangular matrices are
/// zero-padded; among optimal assignments the lexicographically smallest
/// (by group order) is returned.
Matching hungarian_match(const ConfusionMatrix& cm);

/// Sum of cm[p][match(p)] over matched groups.
std::uint64_t matching_objective(const ConfusionMatrix& cm, const Matching& match);

struct MajorityViolation {
    std::size_t group = 0;
    int assigned_class = 0;
    int majority_class = 0;   // plurality class, ties to the lowest id
    double fraction = 0;      // share of the group's pixels held by the assigned class
};

/// Groups whose one-to-one class does not hold a strict plurality of the group's pixels.
std::vector<MajorityViolation> majority_diagnostic(const ConfusionMatrix& cm, const Matching& hungarian);

}  // namespace segdiscover::eval
