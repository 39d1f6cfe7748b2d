#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace segdiscover::embedding {

struct PrimitiveKey {
    std::uint32_t image_id = 0;
    std::uint32_t primitive_id = 0;

    auto operator<=>(const PrimitiveKey&) const = default;
};

/// N x D float32 vectors, one per primitive key.
struct EmbeddingMatrix {
    std::uint32_t dim = 0;
    std::vector<PrimitiveKey> keys;
    std::vector<float> values;  // row-major, keys.size() * dim

    std::size_t count() const { return keys.size(); }
    std::span<const float> row(std::size_t i) const { return {values.data() + i * dim, dim}; }
    std::span<float> row(std::size_t i) { return {values.data() + i * dim, dim}; }

    void append(PrimitiveKey key, std::span<const float> vec);

    /// Rows reordered so keys ascend lexicographically. Throws on duplicate keys.
    EmbeddingMatrix sorted() const;

    /// Throws on non-finite entries or inconsistent sizes.
    void validate() const;
};

}  // namespace segdiscover::embedding
