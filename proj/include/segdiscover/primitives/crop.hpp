#pragma once

#include <cstdint>
#include <vector>

#include "segdiscover/core/image.hpp"
#include "segdiscover/primitives/stats.hpp"

namespace segdiscover::primitives {

/// Crop `img` to the primitive's bounding box, paint pixels outside the
/// primitive with `mean_color` (rounded to 8 bits) and resize bilinearly to
/// target x target.
core::Image extract_crop(const core::Image& img, const core::LabelMap& map, std::uint32_t primitive_id,
                         const core::RgbMean& mean_color, int target);

/// Crops for every primitive of a partition, in id order (one scan for all boxes).
std::vector<core::Image> extract_crops(const core::Image& img, const core::LabelMap& map,
                                       const core::RgbMean& mean_color, int target);

/// Bounding boxes of every label in 0..label_count()-1; absent labels get an empty box.
std::vector<BoundingBox> bounding_boxes(const core::LabelMap& map);

}  // namespace segdiscover::primitives
