#include "segdiscover/primitives/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "segdiscover/core/error.hpp"

namespace segdiscover::primitives {

std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> contact_counts(const core::LabelMap& map) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> counts;
    const int h = map.height;
    const int w = map.width;
    const int row_windows = std::max(h - 1, 1);
    const int col_windows = std::max(w - 1, 1);
    for (int r = 0; r < row_windows; ++r) {
        const int r1 = std::min(r + 1, h - 1);
        for (int c = 0; c < col_windows; ++c) {
            const int c1 = std::min(c + 1, w - 1);
            std::array<std::uint32_t, 4> ids{map.at(r, c), map.at(r, c1), map.at(r1, c), map.at(r1, c1)};
            std::sort(ids.begin(), ids.end());
            const auto end = std::unique(ids.begin(), ids.end());
            for (auto i = ids.begin(); i != end; ++i) {
                for (auto j = i + 1; j != end; ++j) ++counts[{*i, *j}];
            }
        }
    }
    return counts;
}

Adjacency build_adjacency(const core::LabelMap& map, std::size_t keep) {
    Adjacency adj;
    adj.lists.resize(map.label_count());
    for (const auto& [pair, count] : contact_counts(map)) {
        adj.lists[pair.first].push_back({pair.second, count});
        adj.lists[pair.second].push_back({pair.first, count});
    }
    for (auto& list : adj.lists) {
        std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) {
            if (a.contacts != b.contacts) return a.contacts > b.contacts;
            return a.id < b.id;
        });
        if (list.size() > keep) list.resize(keep);
    }
    return adj;
}

double circular_mean_degrees(double sum_cos, double sum_sin) {
    double deg = std::atan2(sum_sin, sum_cos) * 180.0 / std::numbers::pi;
    if (deg < 0) deg += 360.0;
    if (deg >= 360.0) deg -= 360.0;
    return deg;
}

std::vector<PrimitiveStats> shape_stats(const core::LabelMap& map, const core::HsvImage& hsv) {
    if (map.height != hsv.height || map.width != hsv.width) {
        throw Error("shape_stats: label map and HSV image dimensions differ");
    }
    if (!core::is_contiguous_partition(map)) {
        throw Error("shape_stats: label map is not a contiguous full partition");
    }
    const std::uint32_t n = map.label_count();
    std::vector<PrimitiveStats> stats(n);
    std::vector<double> sum_cos(n, 0), sum_sin(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        stats[i].primitive_id = i;
        stats[i].bbox = {map.height, map.width, -1, -1};
    }

    const int h = map.height;
    const int w = map.width;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const std::uint32_t id = map.at(r, c);
            PrimitiveStats& s = stats[id];
            ++s.area;
            if (r == 0 || map.at(r - 1, c) != id) ++s.perimeter;
            if (r == h - 1 || map.at(r + 1, c) != id) ++s.perimeter;
            if (c == 0 || map.at(r, c - 1) != id) ++s.perimeter;
            if (c == w - 1 || map.at(r, c + 1) != id) ++s.perimeter;
            s.bbox.row_min = std::min(s.bbox.row_min, r);
            s.bbox.col_min = std::min(s.bbox.col_min, c);
            s.bbox.row_max = std::max(s.bbox.row_max, r);
            s.bbox.col_max = std::max(s.bbox.col_max, c);
            const double rad = hsv.hue[static_cast<std::size_t>(r) * w + c] * std::numbers::pi / 180.0;
            sum_cos[id] += std::cos(rad);
            sum_sin[id] += std::sin(rad);
        }
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        stats[i].p_ratio = static_cast<double>(stats[i].perimeter) / std::sqrt(static_cast<double>(stats[i].area));
        stats[i].mean_hue = circular_mean_degrees(sum_cos[i], sum_sin[i]);
    }
    return stats;
}

}  // namespace segdiscover::primitives
