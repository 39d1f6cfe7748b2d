#pragma once

// Independent reference implementations used to check the library.

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "segdiscover/core/image.hpp"
#include "segdiscover/eval/confusion.hpp"
#include "segdiscover/primitives/stats.hpp"
#include "segdiscover/refine/network.hpp"

namespace oracle {

using segdiscover::core::Image;
using segdiscover::core::LabelMap;

/// Maximum of sum cm[p][perm(p)] over all injective maps, by enumerating
/// permutations of the zero-padded square matrix.
std::uint64_t best_assignment(const segdiscover::eval::ConfusionMatrix& cm);

/// Number of 8-connected components of each label.
std::vector<int> components_per_label(const LabelMap& map);

/// Pair (j < k) -> number of 2x2 windows (clipped at size-1 dimensions) holding both.
std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> window_contacts(const LabelMap& map);

/// Perimeter of one label counted edge by edge.
std::uint64_t perimeter(const LabelMap& map, std::uint32_t label);

/// Mean of a channel over a (2r+1)^2 window with reflect padding, by direct summation.
double box_mean(const Image& img, int row, int col, int channel, int radius);

/// Largest relative error between the analytic gradient of the summed cross
/// entropy and central differences with step eps.
double gradient_check(const segdiscover::refine::Parameters& params, std::span<const float> features,
                      std::span<const std::uint32_t> labels, double eps);

/// Random image of smooth-ish colour blobs with noise.
Image random_blob_image(int height, int width, std::mt19937_64& rng);

/// Random uniform-noise image.
Image random_noise_image(int height, int width, std::mt19937_64& rng);

/// Pairwise-agreement adjusted Rand index computed from the definition over item pairs.
double pairwise_ari(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

}  // namespace oracle

namespace oracle {

/// Empty when `map` is a contiguous full partition whose segments are each one
/// 8-connected component of at least `min_size` pixels (waived when the image
/// is smaller than min_size); otherwise a description of the first violation.
std::string partition_violation(const LabelMap& map, int min_size);

}  // namespace oracle

#include "segdiscover/clustering/matrix.hpp"

namespace oracle {

/// Two concepts at different scales: a dense gaussian blob (stddev 0.25) at
/// the origin and a ring of radius 5 with radial noise 0.25, `per_concept`
/// 2-d points each. Labels: 0 = blob, 1 = ring.
struct LabeledPoints {
    segdiscover::clustering::Matrix points;
    std::vector<std::uint32_t> labels;
};
LabeledPoints two_scale_dataset(std::size_t per_concept, std::uint64_t seed);

/// `per_cluster` points around each corner of the unit square, stddev `spread`.
LabeledPoints square_corners(std::size_t per_cluster, double spread, std::uint64_t seed);

}  // namespace oracle

namespace oracle {

/// Paint each label with its colour from `colors`.
Image paint(const LabelMap& m, const std::vector<std::array<std::uint8_t, 3>>& colors);

/// 100x100 field of label 0 with 1x30 slivers (labels 1, 2, ...) in the given rows.
LabelMap sliver_fixture(const std::vector<int>& rows);

/// Hue and shape conditions for primitive j joining `target`, computed from
/// pixels: circular mean hues closer than 40 degrees, and area below
/// 0.001 * image_area * p^2 or p above 9, with p = perimeter / sqrt(area).
bool merge_conditions_hold(const LabelMap& m, const Image& img, std::uint32_t j, std::uint32_t target);

/// (source, target) pairs of a single ascending pass: an unmerged primitive
/// joins the first of its three strongest neighbours that satisfies
/// merge_conditions_hold and is not already in its group.
std::vector<std::pair<std::uint32_t, std::uint32_t>> expected_merges(const LabelMap& m, const Image& img);

}  // namespace oracle
