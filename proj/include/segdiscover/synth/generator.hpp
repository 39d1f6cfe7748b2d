#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "segdiscover/core/image.hpp"

namespace segdiscover::synth {

/// Images tiled by Voronoi cells, each cell one of `region_types` textured
/// types. Type t is centred on hue t * 360 / region_types.
struct SynthParams {
    int images = 20;
    int height = 128;
    int width = 128;
    int region_types = 4;
    int min_sites = 8;
    int max_sites = 16;
    double hue_jitter = 10.0;  // degrees, per-pixel uniform
    double noise = 10.0;       // per-channel gaussian stddev, 8-bit units
    std::uint64_t seed = 0;
};

struct SynthSample {
    core::Image image;
    core::LabelMap ground_truth;  // region type per pixel
};

SynthSample generate_sample(const SynthParams& params, int index);

struct SynthDataset {
    std::filesystem::path image_manifest;
    std::filesystem::path gt_manifest;
};

/// Writes images/NNN.png, gt/NNN.png, images.txt and gt.txt under `dir`.
SynthDataset write_dataset(const SynthParams& params, const std::filesystem::path& dir);

}  // namespace segdiscover::synth
