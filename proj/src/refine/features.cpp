#include "segdiscover/refine/features.hpp"

namespace segdiscover::refine {

namespace {

// Half-sample symmetric: ... c b a | a b c ... | c b a ...
int reflect(int i, int n) {
    const int period = 2 * n;
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - 1 - i;
}

// Sliding-window sums over a reflected line.
void box_line(const std::vector<double>& in, int radius, std::vector<double>& out) {
    const int n = static_cast<int>(in.size());
    const double window = 2.0 * radius + 1.0;
    double acc = 0;
    for (int k = -radius; k <= radius; ++k) acc += in[reflect(k, n)];
    for (int i = 0; i < n; ++i) {
        out[i] = acc / window;
        acc += in[reflect(i + radius + 1, n)] - in[reflect(i - radius, n)];
    }
}

}  // namespace

std::vector<double> box_filter(const core::Image& img, int channel, int radius) {
    const int h = img.height;
    const int w = img.width;
    std::vector<double> tmp(static_cast<std::size_t>(h) * w);
    std::vector<double> line, filtered;

    line.resize(w);
    filtered.resize(w);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) line[c] = img.at(r, c, channel);
        box_line(line, radius, filtered);
        for (int c = 0; c < w; ++c) tmp[static_cast<std::size_t>(r) * w + c] = filtered[c];
    }
    std::vector<double> out(tmp.size());
    line.resize(h);
    filtered.resize(h);
    for (int c = 0; c < w; ++c) {
        for (int r = 0; r < h; ++r) line[r] = tmp[static_cast<std::size_t>(r) * w + c];
        box_line(line, radius, filtered);
        for (int r = 0; r < h; ++r) out[static_cast<std::size_t>(r) * w + c] = filtered[r];
    }
    return out;
}

std::vector<float> compute_features(const core::Image& img) {
    const int h = img.height;
    const int w = img.width;
    const std::size_t n = img.pixel_count();
    std::vector<float> out(n * kFeatureCount);
    for (std::size_t p = 0; p < n; ++p) {
        for (int ch = 0; ch < 3; ++ch) out[p * kFeatureCount + ch] = img.data[p * 3 + ch] / 255.0f;
    }
    for (std::size_t ri = 0; ri < kContextRadii.size(); ++ri) {
        for (int ch = 0; ch < 3; ++ch) {
            const auto box = box_filter(img, ch, kContextRadii[ri]);
            for (std::size_t p = 0; p < n; ++p) {
                out[p * kFeatureCount + 3 + ri * 3 + ch] = static_cast<float>(box[p] / 255.0);
            }
        }
    }
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const std::size_t p = static_cast<std::size_t>(r) * w + c;
            out[p * kFeatureCount + 12] = static_cast<float>(r) / h;
            out[p * kFeatureCount + 13] = static_cast<float>(c) / w;
        }
    }
    return out;
}

}  // namespace segdiscover::refine
