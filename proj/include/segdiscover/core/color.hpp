#pragma once

#include <array>
#include <cstdint>

#include "segdiscover/core/image.hpp"

namespace segdiscover::core {

struct Hsv {
    float hue = 0.0f;         // degrees, [0, 360)
    float saturation = 0.0f;  // [0, 1]
    float value = 0.0f;       // [0, 1]
};

/// Hexcone conversion. Achromatic pixels (max == min) get hue 0 and saturation 0.
Hsv rgb_to_hsv(std::array<std::uint8_t, 3> rgb);
HsvImage rgb_to_hsv(const Image& img);

/// Inverse hexcone conversion, rounded to nearest 8-bit value.
std::array<std::uint8_t, 3> hsv_to_rgb(const Hsv& hsv);

/// Circular distance between two hues in degrees, in [0, 180].
double hue_distance(double a, double b);

}  // namespace segdiscover::core
