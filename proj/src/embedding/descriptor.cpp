#include "segdiscover/embedding/descriptor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

#include "segdiscover/core/color.hpp"
#include "segdiscover/core/error.hpp"

namespace segdiscover::embedding {

namespace {

int bin(float x, float range, int bins) {
    return std::clamp(static_cast<int>(x / range * bins), 0, bins - 1);
}

}  // namespace

std::vector<float> embed_builtin(const core::Image& crop) {
    if (crop.height < 1 || crop.width < 1) throw Error("embed_builtin: empty crop");
    const int h = crop.height;
    const int w = crop.width;

    std::array<std::uint64_t, kHistogramSize> hist{};
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const core::Hsv p = core::rgb_to_hsv(crop.pixel(r, c));
            const int hb = bin(p.hue, 360.0f, kHueBins);
            const int sb = bin(p.saturation, 1.0f, kSaturationBins);
            const int vb = bin(p.value, 1.0f, kValueBins);
            ++hist[(hb * kSaturationBins + sb) * kValueBins + vb];
        }
    }

    // Integer sums keep each cell mean independent of scan order.
    const std::array<std::array<int, 2>, 2> rows{{{0, (h + 1) / 2}, {h / 2, h}}};
    const std::array<std::array<int, 2>, 2> cols{{{0, (w + 1) / 2}, {w / 2, w}}};
    std::array<double, kGridSize> grid{};
    for (int gr = 0; gr < 2; ++gr) {
        for (int gc = 0; gc < 2; ++gc) {
            std::array<std::uint64_t, 3> sum{};
            for (int r = rows[gr][0]; r < rows[gr][1]; ++r) {
                for (int c = cols[gc][0]; c < cols[gc][1]; ++c) {
                    for (int ch = 0; ch < 3; ++ch) sum[ch] += crop.at(r, c, ch);
                }
            }
            const double count = static_cast<double>(rows[gr][1] - rows[gr][0]) * (cols[gc][1] - cols[gc][0]);
            for (int ch = 0; ch < 3; ++ch) grid[(gr * 2 + gc) * 3 + ch] = static_cast<double>(sum[ch]) / count / 255.0;
        }
    }

    const double pixels = static_cast<double>(crop.pixel_count());
    std::array<double, kBuiltinDim> raw{};
    double hist_sq = 0;
    for (int i = 0; i < kHistogramSize; ++i) {
        raw[i] = static_cast<double>(hist[i]) / pixels;
        hist_sq += raw[i] * raw[i];
    }
    std::array<double, 4> cell_sq{};
    for (int cell = 0; cell < 4; ++cell) {
        for (int ch = 0; ch < 3; ++ch) {
            const double v = grid[cell * 3 + ch];
            raw[kHistogramSize + cell * 3 + ch] = v;
            cell_sq[cell] += v * v;
        }
    }
    // Cells are summed pairwise per row so a horizontal flip leaves the norm bit-identical.
    const double norm = std::sqrt(hist_sq + ((cell_sq[0] + cell_sq[1]) + (cell_sq[2] + cell_sq[3])));

    std::vector<float> out(kBuiltinDim);
    for (int i = 0; i < kBuiltinDim; ++i) out[i] = static_cast<float>(raw[i] / norm);
    return out;
}

}  // namespace segdiscover::embedding
