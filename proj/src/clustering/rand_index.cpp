#include "segdiscover/clustering/rand_index.hpp"

#include <map>
#include <utility>

#include "segdiscover/core/error.hpp"

namespace segdiscover::clustering {

namespace {

double pairs(double n) { return n * (n - 1) / 2.0; }

}  // namespace

double adjusted_rand_index(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    if (a.size() != b.size()) throw Error("adjusted_rand_index: labelings differ in length");
    const double n = static_cast<double>(a.size());
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> joint;
    std::map<std::uint32_t, double> ra, rb;
    for (std::size_t i = 0; i < a.size(); ++i) {
        joint[{a[i], b[i]}] += 1;
        ra[a[i]] += 1;
        rb[b[i]] += 1;
    }
    double index = 0, sum_a = 0, sum_b = 0;
    for (const auto& [_, v] : joint) index += pairs(v);
    for (const auto& [_, v] : ra) sum_a += pairs(v);
    for (const auto& [_, v] : rb) sum_b += pairs(v);
    const double expected = sum_a * sum_b / pairs(n);
    const double max_index = 0.5 * (sum_a + sum_b);
    if (max_index == expected) return 1.0;  // both trivial partitions
    return (index - expected) / (max_index - expected);
}

}  // namespace segdiscover::clustering
