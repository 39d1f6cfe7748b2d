#include "segdiscover/core/image.hpp"

#include <algorithm>
#include <unordered_map>

#include "segdiscover/core/error.hpp"

namespace segdiscover::core {

Image::Image(int h, int w) : Image(h, w, {0, 0, 0}) {}

Image::Image(int h, int w, std::array<std::uint8_t, 3> fill) : height(h), width(w) {
    if (h < 1 || w < 1) throw Error("image dimensions must be positive");
    data.resize(pixel_count() * 3);
    for (std::size_t i = 0; i < pixel_count(); ++i) {
        data[i * 3 + 0] = fill[0];
        data[i * 3 + 1] = fill[1];
        data[i * 3 + 2] = fill[2];
    }
}

std::array<std::uint8_t, 3> Image::pixel(int r, int c) const {
    const std::size_t o = offset(r, c);
    return {data[o], data[o + 1], data[o + 2]};
}

void Image::set_pixel(int r, int c, std::array<std::uint8_t, 3> rgb) {
    const std::size_t o = offset(r, c);
    data[o] = rgb[0];
    data[o + 1] = rgb[1];
    data[o + 2] = rgb[2];
}

LabelMap::LabelMap(int h, int w, std::uint32_t fill) : height(h), width(w) {
    if (h < 1 || w < 1) throw Error("label map dimensions must be positive");
    labels.assign(pixel_count(), fill);
}

std::uint32_t LabelMap::label_count() const {
    std::uint32_t n = 0;
    for (std::uint32_t v : labels) {
        if (v != kIgnore) n = std::max(n, v + 1);
    }
    return n;
}

bool is_contiguous_partition(const LabelMap& map) {
    const std::uint32_t n = map.label_count();
    std::vector<bool> seen(n, false);
    for (std::uint32_t v : map.labels) {
        if (v == LabelMap::kIgnore) return false;
        seen[v] = true;
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

LabelMap relabel_by_first_appearance(const LabelMap& map) {
    LabelMap out = map;
    std::unordered_map<std::uint32_t, std::uint32_t> remap;
    for (auto& v : out.labels) {
        if (v == LabelMap::kIgnore) continue;
        auto [it, inserted] = remap.try_emplace(v, static_cast<std::uint32_t>(remap.size()));
        v = it->second;
    }
    return out;
}

}  // namespace segdiscover::core
