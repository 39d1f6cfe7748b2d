#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace segdiscover::core {

/// Every stage hyperparameter. Defaults are the COCO-Stuff settings where one
/// exists.
struct Config {
    // superpixels
    double felz_scale = 1000.0;
    double felz_sigma = 0.3;
    std::optional<int> min_size;  // nullopt = derive from image size

    // primitive merging
    double merge_hue_threshold = 40.0;
    double merge_area_factor = 0.001;
    double merge_ratio_threshold = 9.0;
    int crop_size = 64;

    // concept discovery
    int K = 200;
    int C = 27;
    double spectral_sigma = 1e-5;
    int kmeans_batch_size = 1000;
    int kmeans_max_iter = 10000;
    int kmeans_patience = 100;
    bool normalize_embeddings = false;

    // refinement
    double lr = 1e-3;
    double momentum = 0.9;
    double weight_decay = 5e-4;
    int epochs = 30;
    int pixels_per_step = 4096;
    bool augment_crop = true;
    bool augment_flip = true;
    bool augment_saturation = true;

    std::uint64_t seed = 0;

    /// Apply one `key=value` assignment. Throws on unknown keys or bad values.
    void set(const std::string& key, const std::string& value);

    /// Parse a key=value file (`#` comments, blank lines ignored) on top of the current values.
    void merge_file(const std::filesystem::path& file);

    /// Range checks across fields; throws with the offending key.
    void validate() const;

    /// Canonical key=value rendering, one key per line in a fixed order.
    std::string to_text() const;

    static Config from_file(const std::filesystem::path& file);
};

}  // namespace segdiscover::core
