#pragma once

#include "segdiscover/core/image.hpp"

namespace segdiscover::superpixel {

struct FelzParams {
    double scale = 1000.0;  // larger favours larger components
    double sigma = 0.3;     // Gaussian pre-smoothing stddev in pixels, 0 disables
    int min_size = 250;     // post-merge floor on component size, pixels
};

/// Image-size-aware minimum component size: max((H/768)(W/1024)*5000, 250), rounded.
int dynamic_min_size(int height, int width);

/// Graph-based segmentation on the 8-connected pixel grid with Euclidean RGB
/// edge weights. Labels are contiguous 0..n-1 in raster order of first
/// appearance; every segment is 8-connected.
core::LabelMap felzenszwalb_segment(const core::Image& img, const FelzParams& params);

/// Separable Gaussian smoothing (radius ceil(3 sigma), half-sample symmetric
/// padding) in floating point. Output is H*W*3 interleaved.
std::vector<float> gaussian_smooth(const core::Image& img, double sigma);

}  // namespace segdiscover::superpixel
