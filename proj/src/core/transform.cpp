#include "segdiscover/core/transform.hpp"

#include <algorithm>
#include <cmath>

#include "segdiscover/core/error.hpp"

namespace segdiscover::core {

namespace {

struct Tap {
    int lo;
    int hi;
    double frac;
};

std::vector<Tap> bilinear_taps(int in, int out) {
    std::vector<Tap> taps(out);
    const double ratio = static_cast<double>(in) / out;
    for (int i = 0; i < out; ++i) {
        double s = (i + 0.5) * ratio - 0.5;
        s = std::clamp(s, 0.0, static_cast<double>(in - 1));
        const int lo = static_cast<int>(std::floor(s));
        taps[i] = {lo, std::min(lo + 1, in - 1), s - lo};
    }
    return taps;
}

int nearest_source(int i, int in, int out) {
    const int s = static_cast<int>(std::floor((i + 0.5) * in / out));
    return std::clamp(s, 0, in - 1);
}

void check_window(int rows, int cols, int row, int col, int height, int width) {
    if (height < 1 || width < 1 || row < 0 || col < 0 || row + height > rows || col + width > cols) {
        throw Error("crop window outside image bounds");
    }
}

}  // namespace

Image resize_bilinear(const Image& img, int height, int width) {
    if (height < 1 || width < 1) throw Error("resize target must be positive");
    if (height == img.height && width == img.width) return img;
    const auto ty = bilinear_taps(img.height, height);
    const auto tx = bilinear_taps(img.width, width);
    Image out(height, width);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            for (int ch = 0; ch < 3; ++ch) {
                const double top = img.at(ty[r].lo, tx[c].lo, ch) * (1 - tx[c].frac) +
                                   img.at(ty[r].lo, tx[c].hi, ch) * tx[c].frac;
                const double bot = img.at(ty[r].hi, tx[c].lo, ch) * (1 - tx[c].frac) +
                                   img.at(ty[r].hi, tx[c].hi, ch) * tx[c].frac;
                const double v = top * (1 - ty[r].frac) + bot * ty[r].frac;
                out.at(r, c, ch) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
            }
        }
    }
    return out;
}

LabelMap resize_nearest(const LabelMap& map, int height, int width) {
    if (height < 1 || width < 1) throw Error("resize target must be positive");
    if (height == map.height && width == map.width) return map;
    LabelMap out(height, width);
    for (int r = 0; r < height; ++r) {
        const int sr = nearest_source(r, map.height, height);
        for (int c = 0; c < width; ++c) out.at(r, c) = map.at(sr, nearest_source(c, map.width, width));
    }
    return out;
}

Image crop(const Image& img, int row, int col, int height, int width) {
    check_window(img.height, img.width, row, col, height, width);
    Image out(height, width);
    for (int r = 0; r < height; ++r) {
        std::copy_n(img.data.begin() + img.offset(row + r, col), static_cast<std::size_t>(width) * 3,
                    out.data.begin() + out.offset(r, 0));
    }
    return out;
}

LabelMap crop(const LabelMap& map, int row, int col, int height, int width) {
    check_window(map.height, map.width, row, col, height, width);
    LabelMap out(height, width);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) out.at(r, c) = map.at(row + r, col + c);
    }
    return out;
}

Image flip_horizontal(const Image& img) {
    Image out = img;
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) out.set_pixel(r, c, img.pixel(r, img.width - 1 - c));
    }
    return out;
}

LabelMap flip_horizontal(const LabelMap& map) {
    LabelMap out = map;
    for (int r = 0; r < map.height; ++r) {
        for (int c = 0; c < map.width; ++c) out.at(r, c) = map.at(r, map.width - 1 - c);
    }
    return out;
}

}  // namespace segdiscover::core
