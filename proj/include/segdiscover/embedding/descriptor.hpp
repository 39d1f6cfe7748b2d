#pragma once

#include <vector>

#include "segdiscover/core/image.hpp"

namespace segdiscover::embedding {

inline constexpr int kHueBins = 8;
inline constexpr int kSaturationBins = 4;
inline constexpr int kValueBins = 4;
inline constexpr int kHistogramSize = kHueBins * kSaturationBins * kValueBins;  // 128
inline constexpr int kGridSize = 12;                                           // 2x2 cells x RGB
inline constexpr int kBuiltinDim = kHistogramSize + kGridSize;                 // 140

/// Deterministic classical descriptor standing in for a pretrained encoder.
///
/// Layout: a joint HSV histogram (8 hue x 4 saturation x 4 value, hard
/// binning, index = (h*4 + s)*4 + v, mass = pixel fraction), followed by the
/// mean RGB/255 of a 2x2 spatial grid ordered top-left, top-right,
/// bottom-left, bottom-right. For odd sizes the middle row/column belongs to
/// both halves. The whole vector is L2-normalised.
std::vector<float> embed_builtin(const core::Image& crop);

}  // namespace segdiscover::embedding
