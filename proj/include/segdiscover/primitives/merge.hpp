#pragma once

#include <cstdint>
#include <vector>

#include "segdiscover/core/image.hpp"
#include "segdiscover/primitives/stats.hpp"

namespace segdiscover::primitives {

struct MergeParams {
    double hue_threshold = 40.0;   // degrees of circular hue distance, strict
    double area_factor = 0.001;    // area_j < factor * image_area * p_j^2
    double ratio_threshold = 9.0;  // or p_j > threshold
};

struct MergeEvent {
    std::uint32_t source = 0;  // original primitive id
    std::uint32_t target = 0;  // original id of the neighbour it joined
};

struct MergeResult {
    core::LabelMap map;             // contiguous ids, ascending order of surviving roots
    std::vector<MergeEvent> log;    // in pass order
    std::vector<bool> merged;       // merge flag per original primitive
};

/// True when primitive `j` is small or irregular relative to the image:
/// area_j < area_factor * image_area * p_j^2, or p_j > ratio_threshold.
bool is_small_or_irregular(const PrimitiveStats& j, std::uint64_t image_area, const MergeParams& params);

/// Single ascending-id pass over primitives. Each primitive joins the first of
/// its (up to three) strongest neighbours with a similar mean hue, provided it
/// is small or irregular and not already merged. Statistics are those of the
/// input partition; they are not refreshed mid-pass.
MergeResult merge_primitives(const core::LabelMap& map, const std::vector<PrimitiveStats>& stats,
                             const Adjacency& adjacency, std::uint64_t image_area,
                             const MergeParams& params = {});

}  // namespace segdiscover::primitives
