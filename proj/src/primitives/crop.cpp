#include "segdiscover/primitives/crop.hpp"

#include <algorithm>
#include <cmath>

#include "segdiscover/core/error.hpp"
#include "segdiscover/core/transform.hpp"

namespace segdiscover::primitives {

namespace {

std::array<std::uint8_t, 3> round_color(const core::RgbMean& c) {
    std::array<std::uint8_t, 3> out{};
    for (int i = 0; i < 3; ++i) {
        out[i] = static_cast<std::uint8_t>(std::clamp(std::lround(c[i]), 0L, 255L));
    }
    return out;
}

core::Image crop_with_box(const core::Image& img, const core::LabelMap& map, std::uint32_t id,
                          const BoundingBox& box, std::array<std::uint8_t, 3> fill, int target) {
    core::Image patch(box.height(), box.width());
    for (int r = 0; r < box.height(); ++r) {
        for (int c = 0; c < box.width(); ++c) {
            const int sr = box.row_min + r;
            const int sc = box.col_min + c;
            patch.set_pixel(r, c, map.at(sr, sc) == id ? img.pixel(sr, sc) : fill);
        }
    }
    return core::resize_bilinear(patch, target, target);
}

}  // namespace

std::vector<BoundingBox> bounding_boxes(const core::LabelMap& map) {
    std::vector<BoundingBox> boxes(map.label_count(), BoundingBox{map.height, map.width, -1, -1});
    for (int r = 0; r < map.height; ++r) {
        for (int c = 0; c < map.width; ++c) {
            const std::uint32_t id = map.at(r, c);
            if (id == core::LabelMap::kIgnore) continue;
            BoundingBox& b = boxes[id];
            b.row_min = std::min(b.row_min, r);
            b.col_min = std::min(b.col_min, c);
            b.row_max = std::max(b.row_max, r);
            b.col_max = std::max(b.col_max, c);
        }
    }
    return boxes;
}

core::Image extract_crop(const core::Image& img, const core::LabelMap& map, std::uint32_t primitive_id,
                         const core::RgbMean& mean_color, int target) {
    if (img.height != map.height || img.width != map.width) {
        throw Error("extract_crop: image and label map dimensions differ");
    }
    if (target < 1) throw Error("extract_crop: target size must be positive");
    BoundingBox box{map.height, map.width, -1, -1};
    for (int r = 0; r < map.height; ++r) {
        for (int c = 0; c < map.width; ++c) {
            if (map.at(r, c) != primitive_id) continue;
            box.row_min = std::min(box.row_min, r);
            box.col_min = std::min(box.col_min, c);
            box.row_max = std::max(box.row_max, r);
            box.col_max = std::max(box.col_max, c);
        }
    }
    if (box.row_max < 0) throw Error("extract_crop: unknown primitive id " + std::to_string(primitive_id));
    return crop_with_box(img, map, primitive_id, box, round_color(mean_color), target);
}

std::vector<core::Image> extract_crops(const core::Image& img, const core::LabelMap& map,
                                       const core::RgbMean& mean_color, int target) {
    if (img.height != map.height || img.width != map.width) {
        throw Error("extract_crops: image and label map dimensions differ");
    }
    if (target < 1) throw Error("extract_crops: target size must be positive");
    const auto boxes = bounding_boxes(map);
    const auto fill = round_color(mean_color);
    std::vector<core::Image> crops;
    crops.reserve(boxes.size());
    for (std::uint32_t id = 0; id < boxes.size(); ++id) {
        if (boxes[id].row_max < 0) throw Error("extract_crops: primitive " + std::to_string(id) + " is empty");
        crops.push_back(crop_with_box(img, map, id, boxes[id], fill, target));
    }
    return crops;
}

}  // namespace segdiscover::primitives
