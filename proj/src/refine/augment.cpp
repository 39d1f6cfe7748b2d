#include "segdiscover/refine/augment.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "segdiscover/core/color.hpp"
#include "segdiscover/core/error.hpp"
#include "segdiscover/core/transform.hpp"

namespace segdiscover::refine {

core::Image scale_saturation(const core::Image& img, double factor) {
    core::Image out = img;
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            core::Hsv p = core::rgb_to_hsv(img.pixel(r, c));
            p.saturation = static_cast<float>(std::clamp(p.saturation * factor, 0.0, 1.0));
            out.set_pixel(r, c, core::hsv_to_rgb(p));
        }
    }
    return out;
}

std::pair<core::Image, core::LabelMap> augment(const core::Image& img, const core::LabelMap& labels,
                                               const AugmentParams& params, std::uint64_t seed) {
    if (img.height != labels.height || img.width != labels.width) {
        throw Error("augment: image and label dimensions differ");
    }
    std::mt19937_64 rng(seed);
    const double scale = std::uniform_real_distribution<double>(params.crop_min_scale, params.crop_max_scale)(rng);
    const double row_u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double col_u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const bool flip = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < params.flip_probability;
    const double sat = std::uniform_real_distribution<double>(params.saturation_min, params.saturation_max)(rng);

    core::Image out_img = img;
    core::LabelMap out_lbl = labels;
    if (params.crop) {
        const int h = img.height;
        const int w = img.width;
        const int ch = std::clamp(static_cast<int>(std::lround(scale * h)), 1, h);
        const int cw = std::clamp(static_cast<int>(std::lround(scale * w)), 1, w);
        const int top = std::min(static_cast<int>(row_u * (h - ch + 1)), h - ch);
        const int left = std::min(static_cast<int>(col_u * (w - cw + 1)), w - cw);
        out_img = core::resize_bilinear(core::crop(img, top, left, ch, cw), h, w);
        out_lbl = core::resize_nearest(core::crop(labels, top, left, ch, cw), h, w);
    }
    if (params.flip && flip) {
        out_img = core::flip_horizontal(out_img);
        out_lbl = core::flip_horizontal(out_lbl);
    }
    if (params.saturation) out_img = scale_saturation(out_img, sat);
    return {std::move(out_img), std::move(out_lbl)};
}

}  // namespace segdiscover::refine
