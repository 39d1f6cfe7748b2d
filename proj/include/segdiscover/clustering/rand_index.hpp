#pragma once

#include <cstdint>
#include <span>

namespace segdiscover::clustering {

/// Adjusted Rand index between two labelings of the same items.
double adjusted_rand_index(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

}  // namespace segdiscover::clustering
