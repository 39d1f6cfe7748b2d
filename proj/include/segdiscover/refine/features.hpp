#pragma once

#include <array>
#include <vector>

#include "segdiscover/core/image.hpp"

namespace segdiscover::refine {

/// Per-pixel feature layout:
///   [0..3)   RGB / 255
///   [3..12)  box-filtered RGB / 255 at radii 2, 8, 32 (half-sample symmetric padding)
///   [12..14) normalised coordinates (row / H, col / W)
inline constexpr int kFeatureCount = 14;
inline constexpr std::array<int, 3> kContextRadii{2, 8, 32};

/// H*W*14 floats, pixel-major.
std::vector<float> compute_features(const core::Image& img);

/// Mean of one channel over a (2r+1)^2 window with symmetric reflection;
/// returns H*W values.
std::vector<double> box_filter(const core::Image& img, int channel, int radius);

}  // namespace segdiscover::refine
