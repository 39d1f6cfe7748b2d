#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace segdiscover::core {

/// 8-bit interleaved RGB raster, row-major.
struct Image {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> data;  // height * width * 3

    Image() = default;
    Image(int h, int w);
    Image(int h, int w, std::array<std::uint8_t, 3> fill);

    std::size_t pixel_count() const { return static_cast<std::size_t>(height) * width; }
    std::size_t offset(int r, int c) const { return (static_cast<std::size_t>(r) * width + c) * 3; }

    std::uint8_t& at(int r, int c, int ch) { return data[offset(r, c) + ch]; }
    std::uint8_t at(int r, int c, int ch) const { return data[offset(r, c) + ch]; }

    std::array<std::uint8_t, 3> pixel(int r, int c) const;
    void set_pixel(int r, int c, std::array<std::uint8_t, 3> rgb);

    bool operator==(const Image&) const = default;
};

/// Planar HSV; hue in degrees [0, 360), saturation and value in [0, 1].
struct HsvImage {
    int height = 0;
    int width = 0;
    std::vector<float> hue;
    std::vector<float> saturation;
    std::vector<float> value;
};

/// Per-pixel integer labels. Shared carrier for superpixels, pseudo-labels,
/// predictions and ground truth.
struct LabelMap {
    static constexpr std::uint32_t kIgnore = 65535;

    int height = 0;
    int width = 0;
    std::vector<std::uint32_t> labels;

    LabelMap() = default;
    LabelMap(int h, int w, std::uint32_t fill = 0);

    std::size_t pixel_count() const { return static_cast<std::size_t>(height) * width; }
    std::uint32_t& at(int r, int c) { return labels[static_cast<std::size_t>(r) * width + c]; }
    std::uint32_t at(int r, int c) const { return labels[static_cast<std::size_t>(r) * width + c]; }

    /// One past the largest non-ignore label; 0 when every pixel is ignore.
    std::uint32_t label_count() const;

    bool operator==(const LabelMap&) const = default;
};

/// Real-valued RGB triple, e.g. a dataset mean color.
using RgbMean = std::array<double, 3>;

/// True when labels are exactly 0..n-1 (each used at least once) with no ignore pixels.
bool is_contiguous_partition(const LabelMap& map);

/// Renumber labels to 0..n-1 in raster order of first appearance.
LabelMap relabel_by_first_appearance(const LabelMap& map);

}  // namespace segdiscover::core
