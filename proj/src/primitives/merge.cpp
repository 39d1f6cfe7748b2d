#include "segdiscover/primitives/merge.hpp"

#include <map>
#include <numeric>

#include "segdiscover/core/color.hpp"
#include "segdiscover/core/error.hpp"

namespace segdiscover::primitives {

bool is_small_or_irregular(const PrimitiveStats& j, std::uint64_t image_area, const MergeParams& params) {
    const double area = static_cast<double>(j.area);
    return area < params.area_factor * static_cast<double>(image_area) * j.p_ratio * j.p_ratio ||
           j.p_ratio > params.ratio_threshold;
}

MergeResult merge_primitives(const core::LabelMap& map, const std::vector<PrimitiveStats>& stats,
                             const Adjacency& adjacency, std::uint64_t image_area,
                             const MergeParams& params) {
    const std::size_t n = stats.size();
    std::uint64_t total = 0;
    for (const auto& s : stats) total += s.area;
    if (total != map.pixel_count() || image_area != map.pixel_count()) {
        throw Error("merge_primitives: inconsistent stats (area sum " + std::to_string(total) +
                    " != " + std::to_string(map.pixel_count()) + ")");
    }
    if (map.label_count() != n || adjacency.size() != n) {
        throw Error("merge_primitives: stats/adjacency do not match the label map");
    }

    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) x = parent[x];
        return x;
    };

    MergeResult result;
    result.merged.assign(n, false);
    for (std::uint32_t j = 0; j < n; ++j) {
        for (const Neighbor& nb : adjacency.of(j)) {
            if (result.merged[j]) break;
            if (core::hue_distance(stats[j].mean_hue, stats[nb.id].mean_hue) >= params.hue_threshold) continue;
            if (!is_small_or_irregular(stats[j], image_area, params)) continue;
            // The neighbour may already have been absorbed into j's group.
            const std::uint32_t root = find(nb.id);
            if (root == find(j)) continue;
            parent[j] = root;
            result.merged[j] = true;
            result.log.push_back({j, nb.id});
        }
    }

    std::map<std::uint32_t, std::uint32_t> compact;
    for (std::uint32_t j = 0; j < n; ++j) compact.emplace(find(j), 0);
    std::uint32_t next = 0;
    for (auto& [root, id] : compact) id = next++;

    std::vector<std::uint32_t> relabel(n);
    for (std::uint32_t j = 0; j < n; ++j) relabel[j] = compact.at(find(j));
    result.map = map;
    for (auto& v : result.map.labels) v = relabel[v];
    return result;
}

}  // namespace segdiscover::primitives
