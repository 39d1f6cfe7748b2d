#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "segdiscover/core/image.hpp"

namespace segdiscover::core {

/// Ordered list of image paths. An image's id is its zero-based position.
class Manifest {
public:
    Manifest() = default;
    explicit Manifest(std::vector<std::filesystem::path> paths);

    /// One path per line, `#` comment lines and blank lines ignored. Relative
    /// paths are resolved against the manifest's directory.
    static Manifest load(const std::filesystem::path& file);
    void save(const std::filesystem::path& file) const;

    std::size_t size() const { return paths_.size(); }
    bool empty() const { return paths_.empty(); }
    const std::filesystem::path& path(std::size_t image_id) const { return paths_.at(image_id); }
    const std::vector<std::filesystem::path>& paths() const { return paths_; }

private:
    std::vector<std::filesystem::path> paths_;
};

/// Per-channel mean over every pixel of every image (pixels weighted equally).
RgbMean dataset_mean_color(const Manifest& manifest);

/// Same reduction over in-memory images.
RgbMean dataset_mean_color(const std::vector<Image>& images);

}  // namespace segdiscover::core
