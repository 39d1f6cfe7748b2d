#pragma once

#include <cstdint>
#include <utility>

#include "segdiscover/core/image.hpp"

namespace segdiscover::refine {

struct AugmentParams {
    bool crop = true;
    double crop_min_scale = 0.5;  // relative side length, U(min, max)
    double crop_max_scale = 1.0;
    bool flip = true;
    double flip_probability = 0.5;
    bool saturation = true;
    double saturation_min = 0.6;  // multiplicative, U(min, max)
    double saturation_max = 1.4;
};

/// Random crop (resized back; bilinear for the image, nearest for labels),
/// horizontal flip, and saturation scaling (image only). All draws are made
/// from `seed` in a fixed order whether or not a transform is enabled.
std::pair<core::Image, core::LabelMap> augment(const core::Image& img, const core::LabelMap& labels,
                                               const AugmentParams& params, std::uint64_t seed);

/// Multiply HSV saturation by `factor` (clamped to [0, 1]).
core::Image scale_saturation(const core::Image& img, double factor);

}  // namespace segdiscover::refine
