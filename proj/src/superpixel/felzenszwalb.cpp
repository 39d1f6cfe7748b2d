#include "segdiscover/superpixel/felzenszwalb.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "segdiscover/core/error.hpp"

namespace segdiscover::superpixel {

namespace {

struct Edge {
    float weight;
    std::uint32_t a;
    std::uint32_t b;
};

class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n), rank_(n, 0), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0u);
    }

    std::uint32_t find(std::uint32_t x) {
        std::uint32_t root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            const std::uint32_t next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    std::uint32_t join(std::uint32_t a, std::uint32_t b) {
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        if (rank_[a] == rank_[b]) ++rank_[a];
        return a;
    }

    std::uint32_t size(std::uint32_t root) const { return size_[root]; }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint8_t> rank_;
    std::vector<std::uint32_t> size_;
};

int reflect_index(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * n;
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - 1 - i;
}

std::vector<Edge> build_edges(const std::vector<float>& px, int h, int w) {
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(h) * w * 4);
    auto dist = [&](std::size_t p, std::size_t q) {
        const float dr = px[p * 3] - px[q * 3];
        const float dg = px[p * 3 + 1] - px[q * 3 + 1];
        const float db = px[p * 3 + 2] - px[q * 3 + 2];
        return std::sqrt(dr * dr + dg * dg + db * db);
    };
    // Forward half of the 8-neighbourhood; every edge has source < target.
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const auto p = static_cast<std::uint32_t>(r * w + c);
            auto add = [&](int rr, int cc) {
                const auto q = static_cast<std::uint32_t>(rr * w + cc);
                edges.push_back({dist(p, q), p, q});
            };
            if (c + 1 < w) add(r, c + 1);
            if (r + 1 < h) {
                if (c > 0) add(r + 1, c - 1);
                add(r + 1, c);
                if (c + 1 < w) add(r + 1, c + 1);
            }
        }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
        if (x.weight != y.weight) return x.weight < y.weight;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return edges;
}

}  // namespace

int dynamic_min_size(int height, int width) {
    if (height < 1 || width < 1) throw Error("dynamic_min_size: dimensions must be positive");
    const double v = (height / 768.0) * (width / 1024.0) * 5000.0;
    return static_cast<int>(std::lround(std::max(v, 250.0)));
}

std::vector<float> gaussian_smooth(const core::Image& img, double sigma) {
    const int h = img.height;
    const int w = img.width;
    std::vector<float> src(img.data.begin(), img.data.end());
    if (sigma <= 0) return src;

    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(2 * radius + 1);
    double total = 0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
        total += kernel[i + radius];
    }
    for (double& k : kernel) k /= total;

    std::vector<float> tmp(src.size());
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            for (int ch = 0; ch < 3; ++ch) {
                double acc = 0;
                for (int i = -radius; i <= radius; ++i) {
                    const int cc = reflect_index(c + i, w);
                    acc += kernel[i + radius] * src[(static_cast<std::size_t>(r) * w + cc) * 3 + ch];
                }
                tmp[(static_cast<std::size_t>(r) * w + c) * 3 + ch] = static_cast<float>(acc);
            }
        }
    }
    std::vector<float> out(src.size());
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            for (int ch = 0; ch < 3; ++ch) {
                double acc = 0;
                for (int i = -radius; i <= radius; ++i) {
                    const int rr = reflect_index(r + i, h);
                    acc += kernel[i + radius] * tmp[(static_cast<std::size_t>(rr) * w + c) * 3 + ch];
                }
                out[(static_cast<std::size_t>(r) * w + c) * 3 + ch] = static_cast<float>(acc);
            }
        }
    }
    return out;
}

core::LabelMap felzenszwalb_segment(const core::Image& img, const FelzParams& params) {
    if (!(params.scale > 0)) throw Error("felzenszwalb: scale must be > 0");
    if (!(params.sigma >= 0)) throw Error("felzenszwalb: sigma must be >= 0");
    if (params.min_size < 1) throw Error("felzenszwalb: min_size must be >= 1");

    const int h = img.height;
    const int w = img.width;
    const std::size_t n = img.pixel_count();
    const std::vector<Edge> edges = build_edges(gaussian_smooth(img, params.sigma), h, w);

    DisjointSet sets(n);
    // threshold[root] = Int(C) + scale / |C|
    std::vector<double> threshold(n, params.scale);
    for (const Edge& e : edges) {
        std::uint32_t a = sets.find(e.a);
        std::uint32_t b = sets.find(e.b);
        if (a == b) continue;
        if (e.weight <= threshold[a] && e.weight <= threshold[b]) {
            const std::uint32_t root = sets.join(a, b);
            threshold[root] = e.weight + params.scale / sets.size(root);
        }
    }

    // Ascending-weight pass: the first boundary edge seen for an undersized
    // component is its cheapest one.
    for (const Edge& e : edges) {
        const std::uint32_t a = sets.find(e.a);
        const std::uint32_t b = sets.find(e.b);
        if (a != b && (sets.size(a) < static_cast<std::uint32_t>(params.min_size) ||
                       sets.size(b) < static_cast<std::uint32_t>(params.min_size))) {
            sets.join(a, b);
        }
    }

    core::LabelMap out(h, w);
    for (std::size_t p = 0; p < n; ++p) out.labels[p] = sets.find(static_cast<std::uint32_t>(p));
    return core::relabel_by_first_appearance(out);
}

}  // namespace segdiscover::superpixel
