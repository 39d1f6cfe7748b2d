#include "segdiscover/core/manifest.hpp"

#include <cstdint>
#include <fstream>
#include <set>

#include "segdiscover/core/error.hpp"
#include "segdiscover/core/image_io.hpp"

namespace segdiscover::core {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Exact integer accumulation keeps the reduction independent of image order.
struct ChannelSums {
    std::array<std::uint64_t, 3> sum{0, 0, 0};
    std::uint64_t pixels = 0;

    void add(const Image& img) {
        for (std::size_t i = 0; i < img.pixel_count(); ++i) {
            for (int c = 0; c < 3; ++c) sum[c] += img.data[i * 3 + c];
        }
        pixels += img.pixel_count();
    }

    RgbMean mean() const {
        return {static_cast<double>(sum[0]) / static_cast<double>(pixels),
                static_cast<double>(sum[1]) / static_cast<double>(pixels),
                static_cast<double>(sum[2]) / static_cast<double>(pixels)};
    }
};

}  // namespace

Manifest::Manifest(std::vector<std::filesystem::path> paths) : paths_(std::move(paths)) {
    std::set<std::filesystem::path> seen;
    for (const auto& p : paths_) {
        if (!seen.insert(p).second) throw Error("duplicate manifest entry: " + p.string());
    }
}

Manifest Manifest::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error("manifest not found: " + file.string());
    const auto base = file.parent_path();
    std::vector<std::filesystem::path> paths;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        std::filesystem::path p(t);
        if (p.is_relative()) p = base / p;
        paths.push_back(p.lexically_normal());
    }
    return Manifest(std::move(paths));
}

void Manifest::save(const std::filesystem::path& file) const {
    std::ofstream out(file);
    if (!out) throw Error("cannot create file: " + file.string());
    for (const auto& p : paths_) out << p.string() << '\n';
}

RgbMean dataset_mean_color(const Manifest& manifest) {
    if (manifest.empty()) throw Error("dataset_mean_color: empty manifest");
    ChannelSums acc;
    for (const auto& p : manifest.paths()) acc.add(load_image(p));
    return acc.mean();
}

RgbMean dataset_mean_color(const std::vector<Image>& images) {
    if (images.empty()) throw Error("dataset_mean_color: no images");
    ChannelSums acc;
    for (const auto& img : images) acc.add(img);
    return acc.mean();
}

}  // namespace segdiscover::core
