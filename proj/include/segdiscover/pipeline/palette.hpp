#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "segdiscover/core/image.hpp"

namespace segdiscover::pipeline {

using Rgb = std::array<std::uint8_t, 3>;

inline constexpr std::size_t kFixedPaletteSize = 27;

/// Stable colour for a label. The first 27 are fixed; later labels rotate
/// hue by the golden angle.
Rgb palette_color(std::uint32_t label);

/// Paint a label map. `remap` (when non-empty) maps each label to the palette
/// index used for it; ignore pixels are black.
core::Image colorize(const core::LabelMap& map, const std::vector<int>& remap = {});

}  // namespace segdiscover::pipeline
