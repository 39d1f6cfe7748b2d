#include "segdiscover/core/color.hpp"

#include <algorithm>
#include <cmath>

namespace segdiscover::core {

Hsv rgb_to_hsv(std::array<std::uint8_t, 3> rgb) {
    const float r = rgb[0] / 255.0f;
    const float g = rgb[1] / 255.0f;
    const float b = rgb[2] / 255.0f;
    const float mx = std::max({r, g, b});
    const float mn = std::min({r, g, b});
    const float delta = mx - mn;

    Hsv out;
    out.value = mx;
    if (rgb[0] == rgb[1] && rgb[1] == rgb[2]) return out;

    out.saturation = delta / mx;
    float h;
    if (mx == r) {
        h = 60.0f * std::fmod((g - b) / delta, 6.0f);
    } else if (mx == g) {
        h = 60.0f * ((b - r) / delta + 2.0f);
    } else {
        h = 60.0f * ((r - g) / delta + 4.0f);
    }
    if (h < 0.0f) h += 360.0f;
    if (h >= 360.0f) h -= 360.0f;
    out.hue = h;
    return out;
}

HsvImage rgb_to_hsv(const Image& img) {
    HsvImage out;
    out.height = img.height;
    out.width = img.width;
    const std::size_t n = img.pixel_count();
    out.hue.resize(n);
    out.saturation.resize(n);
    out.value.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Hsv p = rgb_to_hsv({img.data[i * 3], img.data[i * 3 + 1], img.data[i * 3 + 2]});
        out.hue[i] = p.hue;
        out.saturation[i] = p.saturation;
        out.value[i] = p.value;
    }
    return out;
}

std::array<std::uint8_t, 3> hsv_to_rgb(const Hsv& hsv) {
    const double v = std::clamp<double>(hsv.value, 0.0, 1.0);
    const double s = std::clamp<double>(hsv.saturation, 0.0, 1.0);
    double h = std::fmod(static_cast<double>(hsv.hue), 360.0);
    if (h < 0.0) h += 360.0;

    const double c = v * s;
    const double hp = h / 60.0;
    const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    switch (static_cast<int>(hp)) {
        case 0: r = c; g = x; break;
        case 1: r = x; g = c; break;
        case 2: g = c; b = x; break;
        case 3: g = x; b = c; break;
        case 4: r = x; b = c; break;
        default: r = c; b = x; break;
    }
    const double m = v - c;
    auto to8 = [](double u) {
        return static_cast<std::uint8_t>(std::clamp(std::lround(u * 255.0), 0L, 255L));
    };
    return {to8(r + m), to8(g + m), to8(b + m)};
}

double hue_distance(double a, double b) {
    const double d = std::fabs(a - b);
    return std::min(d, 360.0 - d);
}

}  // namespace segdiscover::core
