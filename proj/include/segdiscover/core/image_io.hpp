#pragma once

#include <filesystem>

#include "segdiscover/core/image.hpp"

namespace segdiscover::core {

/// Load an 8-bit RGB PNG or binary PPM (P6, maxval 255). Format is detected
/// from the file signature; pixel values are returned exactly as stored.
Image load_image(const std::filesystem::path& path);

/// Write an 8-bit RGB PNG. Output bytes are a pure function of the image.
void save_image(const std::filesystem::path& path, const Image& img);

/// Write a binary PPM (P6).
void save_ppm(const std::filesystem::path& path, const Image& img);

/// Label maps are 16-bit grayscale PNGs, pixel value = label, 65535 = ignore.
/// 8-bit grayscale PNGs are accepted on load (values taken verbatim).
LabelMap load_label_map(const std::filesystem::path& path);
void save_label_map(const std::filesystem::path& path, const LabelMap& map);

}  // namespace segdiscover::core
