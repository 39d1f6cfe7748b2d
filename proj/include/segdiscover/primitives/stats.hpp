#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "segdiscover/core/image.hpp"

namespace segdiscover::primitives {

struct BoundingBox {
    int row_min = 0;
    int col_min = 0;
    int row_max = 0;  // inclusive
    int col_max = 0;  // inclusive

    int height() const { return row_max - row_min + 1; }
    int width() const { return col_max - col_min + 1; }
};

struct PrimitiveStats {
    std::uint32_t primitive_id = 0;
    std::uint64_t area = 0;       // pixels
    std::uint64_t perimeter = 0;  // unit pixel edges on the primitive's boundary
    double p_ratio = 0;           // perimeter / sqrt(area)
    double mean_hue = 0;          // circular mean, degrees in [0, 360)
    BoundingBox bbox;
    bool merged = false;
};

struct Neighbor {
    std::uint32_t id = 0;
    std::uint32_t contacts = 0;  // 2x2 windows holding pixels of both primitives

    bool operator==(const Neighbor&) const = default;
};

/// Per-primitive neighbour lists, strongest contact first.
struct Adjacency {
    std::vector<std::vector<Neighbor>> lists;

    const std::vector<Neighbor>& of(std::uint32_t id) const { return lists.at(id); }
    std::size_t size() const { return lists.size(); }
};

/// Contact counts for every unordered pair (j < k) sharing at least one 2x2
/// window. Windows are clipped to 1x2 / 2x1 / 1x1 when a dimension is 1.
std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> contact_counts(const core::LabelMap& map);

/// Neighbour lists sorted by contact count (descending, ties by ascending id),
/// truncated to `keep` entries.
Adjacency build_adjacency(const core::LabelMap& map, std::size_t keep = 3);

/// Geometry and hue summary for every primitive of a full partition.
std::vector<PrimitiveStats> shape_stats(const core::LabelMap& map, const core::HsvImage& hsv);

/// Circular mean of angles in degrees mapped to [0, 360).
double circular_mean_degrees(double sum_cos, double sum_sin);

}  // namespace segdiscover::primitives
