#pragma once

#include "segdiscover/core/image.hpp"

namespace segdiscover::core {

/// Bilinear resampling with half-pixel centres and edge clamping, rounded to
/// nearest. Resizing to the same size is the identity.
Image resize_bilinear(const Image& img, int height, int width);

/// Nearest-neighbour resampling (half-pixel centres); used for categorical maps.
LabelMap resize_nearest(const LabelMap& map, int height, int width);

Image crop(const Image& img, int row, int col, int height, int width);
LabelMap crop(const LabelMap& map, int row, int col, int height, int width);

Image flip_horizontal(const Image& img);
LabelMap flip_horizontal(const LabelMap& map);

}  // namespace segdiscover::core
