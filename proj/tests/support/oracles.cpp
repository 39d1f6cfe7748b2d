#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "segdiscover/core/color.hpp"

namespace oracle {

std::uint64_t best_assignment(const segdiscover::eval::ConfusionMatrix& cm) {
    const std::size_t n = std::max(cm.groups(), cm.classes());
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = 0;
    do {
        std::uint64_t s = 0;
        for (std::size_t p = 0; p < cm.groups(); ++p) {
            if (perm[p] < cm.classes()) s += cm.at(p, perm[p]);
        }
        best = std::max(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<int> components_per_label(const LabelMap& map) {
    const std::uint32_t n = map.label_count();
    std::vector<int> count(n, 0);
    std::vector<bool> seen(map.pixel_count(), false);
    for (int r = 0; r < map.height; ++r) {
        for (int c = 0; c < map.width; ++c) {
            const std::size_t start = static_cast<std::size_t>(r) * map.width + c;
            if (seen[start]) continue;
            const std::uint32_t label = map.labels[start];
            ++count[label];
            std::deque<std::pair<int, int>> q{{r, c}};
            seen[start] = true;
            while (!q.empty()) {
                auto [y, x] = q.front();
                q.pop_front();
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int ny = y + dy, nx = x + dx;
                        if (ny < 0 || nx < 0 || ny >= map.height || nx >= map.width) continue;
                        const std::size_t k = static_cast<std::size_t>(ny) * map.width + nx;
                        if (seen[k] || map.labels[k] != label) continue;
                        seen[k] = true;
                        q.push_back({ny, nx});
                    }
                }
            }
        }
    }
    return count;
}

std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> window_contacts(const LabelMap& map) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> out;
    const int rows = std::max(map.height - 1, 1);
    const int cols = std::max(map.width - 1, 1);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            std::vector<std::uint32_t> in;
            for (int dy = 0; dy < 2; ++dy) {
                for (int dx = 0; dx < 2; ++dx) {
                    if (r + dy < map.height && c + dx < map.width) in.push_back(map.at(r + dy, c + dx));
                }
            }
            std::sort(in.begin(), in.end());
            in.erase(std::unique(in.begin(), in.end()), in.end());
            for (std::size_t i = 0; i < in.size(); ++i) {
                for (std::size_t j = i + 1; j < in.size(); ++j) ++out[{in[i], in[j]}];
            }
        }
    }
    return out;
}

std::uint64_t perimeter(const LabelMap& map, std::uint32_t label) {
    std::uint64_t p = 0;
    auto differs = [&](int r, int c) {
        return r < 0 || c < 0 || r >= map.height || c >= map.width || map.at(r, c) != label;
    };
    for (int r = 0; r < map.height; ++r) {
        for (int c = 0; c < map.width; ++c) {
            if (map.at(r, c) != label) continue;
            p += differs(r - 1, c) + differs(r + 1, c) + differs(r, c - 1) + differs(r, c + 1);
        }
    }
    return p;
}

namespace {

// Half-sample symmetric reflection: -1 -> 0, n -> n-1; repeats for large offsets.
int reflect(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * n;
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - 1 - i;
}

}  // namespace

double box_mean(const Image& img, int row, int col, int channel, int radius) {
    double s = 0;
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            s += img.at(reflect(row + dy, img.height), reflect(col + dx, img.width), channel);
        }
    }
    const double side = 2.0 * radius + 1.0;
    return s / (side * side);
}

double gradient_check(const segdiscover::refine::Parameters& params, std::span<const float> features,
                      std::span<const std::uint32_t> labels, double eps) {
    std::vector<double> grad;
    segdiscover::refine::cross_entropy(params, features, labels, &grad);
    double worst = 0;
    segdiscover::refine::Parameters probe = params;
    for (std::size_t i = 0; i < params.values.size(); ++i) {
        probe.values[i] = params.values[i] + eps;
        const double up = segdiscover::refine::cross_entropy(probe, features, labels, nullptr);
        probe.values[i] = params.values[i] - eps;
        const double down = segdiscover::refine::cross_entropy(probe, features, labels, nullptr);
        probe.values[i] = params.values[i];
        const double numeric = (up - down) / (2 * eps);
        const double denom = std::max({std::abs(numeric), std::abs(grad[i]), 1e-6});
        worst = std::max(worst, std::abs(numeric - grad[i]) / denom);
    }
    return worst;
}

Image random_blob_image(int height, int width, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<int> count(2, 6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, 6.0);
    struct Blob {
        double r, c;
        int rgb[3];
    };
    std::vector<Blob> blobs(count(rng));
    for (auto& b : blobs) b = {unit(rng) * height, unit(rng) * width, {byte(rng), byte(rng), byte(rng)}};
    Image img(height, width);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            const Blob* best = &blobs[0];
            double bd = 1e18;
            for (const auto& b : blobs) {
                const double d = (b.r - r) * (b.r - r) + (b.c - c) * (b.c - c);
                if (d < bd) {
                    bd = d;
                    best = &b;
                }
            }
            for (int ch = 0; ch < 3; ++ch) {
                img.at(r, c, ch) = static_cast<std::uint8_t>(std::clamp(best->rgb[ch] + noise(rng), 0.0, 255.0));
            }
        }
    }
    return img;
}

Image random_noise_image(int height, int width, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> byte(0, 255);
    Image img(height, width);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(byte(rng));
    return img;
}

double pairwise_ari(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    // Pair counts: same-same, same-diff, diff-same, diff-diff.
    double ss = 0, sd = 0, ds = 0, dd = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            const bool sa = a[i] == a[j], sb = b[i] == b[j];
            if (sa && sb) ++ss;
            else if (sa) ++sd;
            else if (sb) ++ds;
            else ++dd;
        }
    }
    const double pairs = ss + sd + ds + dd;
    const double expected = (ss + sd) * (ss + ds) / pairs;
    const double maximum = 0.5 * ((ss + sd) + (ss + ds));
    if (maximum == expected) return 1.0;
    return (ss - expected) / (maximum - expected);
}

}  // namespace oracle

namespace oracle {

std::string partition_violation(const LabelMap& map, int min_size) {
    const std::uint32_t n = map.label_count();
    std::vector<std::uint64_t> area(n, 0);
    for (std::uint32_t v : map.labels) {
        if (v == LabelMap::kIgnore) return "ignore pixel in a partition";
        ++area[v];
    }
    for (std::uint32_t k = 0; k < n; ++k) {
        if (area[k] == 0) return "label " + std::to_string(k) + " unused (ids not contiguous)";
    }
    const auto comps = components_per_label(map);
    for (std::uint32_t k = 0; k < n; ++k) {
        if (comps[k] != 1) return "label " + std::to_string(k) + " has " + std::to_string(comps[k]) + " components";
    }
    if (map.pixel_count() >= static_cast<std::size_t>(min_size)) {
        for (std::uint32_t k = 0; k < n; ++k) {
            if (area[k] < static_cast<std::uint64_t>(min_size)) {
                return "label " + std::to_string(k) + " has " + std::to_string(area[k]) + " < " +
                       std::to_string(min_size) + " pixels";
            }
        }
    }
    return {};
}

}  // namespace oracle

namespace oracle {

LabeledPoints two_scale_dataset(std::size_t per_concept, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> blob(0.0, 0.25);
    std::normal_distribution<double> radial(5.0, 0.25);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
    LabeledPoints out{segdiscover::clustering::Matrix(2 * per_concept, 2), {}};
    for (std::size_t i = 0; i < per_concept; ++i) {
        out.points(i, 0) = blob(rng);
        out.points(i, 1) = blob(rng);
        out.labels.push_back(0);
    }
    for (std::size_t i = per_concept; i < 2 * per_concept; ++i) {
        const double r = radial(rng), a = angle(rng);
        out.points(i, 0) = r * std::cos(a);
        out.points(i, 1) = r * std::sin(a);
        out.labels.push_back(1);
    }
    return out;
}

LabeledPoints square_corners(std::size_t per_cluster, double spread, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, spread);
    LabeledPoints out{segdiscover::clustering::Matrix(4 * per_cluster, 2), {}};
    std::size_t i = 0;
    for (std::uint32_t k = 0; k < 4; ++k) {
        for (std::size_t j = 0; j < per_cluster; ++j, ++i) {
            out.points(i, 0) = (k & 1) + noise(rng);
            out.points(i, 1) = (k >> 1) + noise(rng);
            out.labels.push_back(k);
        }
    }
    return out;
}

}  // namespace oracle

namespace oracle {

Image paint(const LabelMap& m, const std::vector<std::array<std::uint8_t, 3>>& colors) {
    Image img(m.height, m.width);
    for (int r = 0; r < m.height; ++r) {
        for (int c = 0; c < m.width; ++c) img.set_pixel(r, c, colors[m.at(r, c)]);
    }
    return img;
}

LabelMap sliver_fixture(const std::vector<int>& rows) {
    LabelMap m(100, 100, 0);
    std::uint32_t id = 1;
    for (int r : rows) {
        for (int c = 10; c < 40; ++c) m.at(r, c) = id;
        ++id;
    }
    return m;
}

bool merge_conditions_hold(const LabelMap& m, const Image& img, std::uint32_t j, std::uint32_t target) {
    constexpr double kPi = 3.14159265358979323846;
    std::uint64_t area = 0;
    double cs = 0, sn = 0, ct = 0, st = 0;
    const auto hsv = segdiscover::core::rgb_to_hsv(img);
    for (std::size_t i = 0; i < m.labels.size(); ++i) {
        const double a = hsv.hue[i] * kPi / 180.0;
        if (m.labels[i] == j) {
            ++area;
            cs += std::cos(a);
            sn += std::sin(a);
        } else if (m.labels[i] == target) {
            ct += std::cos(a);
            st += std::sin(a);
        }
    }
    const double hj = std::fmod(std::atan2(sn, cs) * 180.0 / kPi + 360.0, 360.0);
    const double ht = std::fmod(std::atan2(st, ct) * 180.0 / kPi + 360.0, 360.0);
    const double d = std::min(std::abs(hj - ht), 360.0 - std::abs(hj - ht));
    const double p = static_cast<double>(perimeter(m, j)) / std::sqrt(static_cast<double>(area));
    const double image_area = static_cast<double>(m.pixel_count());
    return d < 40.0 && (static_cast<double>(area) < 0.001 * image_area * p * p || p > 9.0);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> expected_merges(const LabelMap& m, const Image& img) {
    std::uint32_t n = 0;
    for (auto v : m.labels) n = std::max(n, v + 1);
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> nbrs(n);  // (contacts, id)
    for (const auto& [pair, count] : window_contacts(m)) {
        nbrs[pair.first].push_back({count, pair.second});
        nbrs[pair.second].push_back({count, pair.first});
    }
    std::vector<std::uint32_t> group(n);
    for (std::uint32_t i = 0; i < n; ++i) group[i] = i;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> log;
    for (std::uint32_t j = 0; j < n; ++j) {
        auto& list = nbrs[j];
        std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        if (list.size() > 3) list.resize(3);
        for (const auto& [count, k] : list) {
            if (group[k] == group[j] || !merge_conditions_hold(m, img, j, k)) continue;
            const std::uint32_t from = group[j], to = group[k];
            for (auto& g : group) {
                if (g == from) g = to;
            }
            log.push_back({j, k});
            break;
        }
    }
    return log;
}

}  // namespace oracle
