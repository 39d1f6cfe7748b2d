#include "segdiscover/pipeline/palette.hpp"

#include <cmath>

#include "segdiscover/core/color.hpp"

namespace segdiscover::pipeline {

namespace {

constexpr std::array<Rgb, kFixedPaletteSize> kFixed{{
    {230, 25, 75},   {60, 180, 75},   {255, 225, 25},  {0, 130, 200},   {245, 130, 48},  {145, 30, 180},
    {70, 240, 240},  {240, 50, 230},  {210, 245, 60},  {250, 190, 212}, {0, 128, 128},   {220, 190, 255},
    {170, 110, 40},  {255, 250, 200}, {128, 0, 0},     {170, 255, 195}, {128, 128, 0},   {255, 215, 180},
    {0, 0, 128},     {128, 128, 128}, {255, 255, 255}, {64, 0, 96},     {100, 149, 237}, {255, 99, 71},
    {46, 139, 87},   {218, 165, 32},  {106, 90, 205},
}};

constexpr double kGoldenAngle = 137.50776405003785;

}  // namespace

Rgb palette_color(std::uint32_t label) {
    if (label < kFixedPaletteSize) return kFixed[label];
    const double hue = std::fmod(static_cast<double>(label - kFixedPaletteSize) * kGoldenAngle, 360.0);
    const float sat = (label / 7) % 2 == 0 ? 0.75f : 0.5f;
    return core::hsv_to_rgb({static_cast<float>(hue), sat, 0.9f});
}

core::Image colorize(const core::LabelMap& map, const std::vector<int>& remap) {
    core::Image out(map.height, map.width);
    for (int r = 0; r < map.height; ++r) {
        for (int c = 0; c < map.width; ++c) {
            const std::uint32_t label = map.at(r, c);
            if (label == core::LabelMap::kIgnore) continue;
            std::uint32_t index = label;
            if (!remap.empty() && label < remap.size() && remap[label] >= 0) index = static_cast<std::uint32_t>(remap[label]);
            out.set_pixel(r, c, palette_color(index));
        }
    }
    return out;
}

}  // namespace segdiscover::pipeline
