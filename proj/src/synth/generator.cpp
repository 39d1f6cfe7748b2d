#include "segdiscover/synth/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "segdiscover/core/color.hpp"
#include "segdiscover/core/error.hpp"
#include "segdiscover/core/image_io.hpp"
#include "segdiscover/core/manifest.hpp"

namespace segdiscover::synth {

namespace {

struct Site {
    double row = 0;
    double col = 0;
    int type = 0;
};

std::string numbered(int i, const char* ext) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%03d.%s", i, ext);
    return buf;
}

}  // namespace

SynthSample generate_sample(const SynthParams& p, int index) {
    if (p.region_types < 1 || p.min_sites < 1 || p.max_sites < p.min_sites || p.height < 1 || p.width < 1) {
        throw Error("synth: invalid parameters");
    }
    std::seed_seq seq{static_cast<std::uint32_t>(p.seed), static_cast<std::uint32_t>(p.seed >> 32),
                      static_cast<std::uint32_t>(index)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<int> site_count(p.min_sites, p.max_sites);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const int n = site_count(rng);
    std::vector<int> types(n);
    for (int i = 0; i < n; ++i) types[i] = i % p.region_types;
    std::shuffle(types.begin(), types.end(), rng);
    std::vector<Site> sites(n);
    for (int i = 0; i < n; ++i) sites[i] = {unit(rng) * p.height, unit(rng) * p.width, types[i]};

    SynthSample s{core::Image(p.height, p.width), core::LabelMap(p.height, p.width)};
    std::uniform_real_distribution<double> jitter(-p.hue_jitter, p.hue_jitter);
    std::normal_distribution<double> noise(0.0, p.noise);
    const double type_spacing = 360.0 / p.region_types;

    for (int r = 0; r < p.height; ++r) {
        for (int c = 0; c < p.width; ++c) {
            int nearest = 0;
            double best = 0;
            for (int i = 0; i < n; ++i) {
                const double dr = sites[i].row - r, dc = sites[i].col - c;
                const double d = dr * dr + dc * dc;
                if (i == 0 || d < best) {
                    best = d;
                    nearest = i;
                }
            }
            const int t = sites[nearest].type;
            // Oriented stripes give each type its own texture.
            const double angle = t * std::numbers::pi / p.region_types;
            const double phase = 2.0 * std::numbers::pi * (r * std::cos(angle) + c * std::sin(angle)) / 8.0;
            double hue = std::fmod(t * type_spacing + jitter(rng) + 360.0, 360.0);
            const float sat = static_cast<float>(0.7 + 0.1 * std::sin(phase));
            const float val = static_cast<float>(0.75 + 0.12 * std::cos(phase));
            const auto rgb = core::hsv_to_rgb({static_cast<float>(hue), sat, val});
            for (int ch = 0; ch < 3; ++ch) {
                const double v = std::round(rgb[ch] + noise(rng));
                s.image.at(r, c, ch) = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
            }
            s.ground_truth.at(r, c) = static_cast<std::uint32_t>(t);
        }
    }
    return s;
}

SynthDataset write_dataset(const SynthParams& params, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir / "images");
    std::filesystem::create_directories(dir / "gt");
    std::vector<std::filesystem::path> images, gts;
    for (int i = 0; i < params.images; ++i) {
        const SynthSample s = generate_sample(params, i);
        const auto img_rel = std::filesystem::path("images") / numbered(i, "png");
        const auto gt_rel = std::filesystem::path("gt") / numbered(i, "png");
        core::save_image(dir / img_rel, s.image);
        core::save_label_map(dir / gt_rel, s.ground_truth);
        images.push_back(img_rel);
        gts.push_back(gt_rel);
    }
    SynthDataset out{dir / "images.txt", dir / "gt.txt"};
    core::Manifest(images).save(out.image_manifest);
    core::Manifest(gts).save(out.gt_manifest);
    return out;
}

}  // namespace segdiscover::synth
