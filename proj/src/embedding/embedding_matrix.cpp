#include "segdiscover/embedding/embedding_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "segdiscover/core/error.hpp"

namespace segdiscover::embedding {

void EmbeddingMatrix::append(PrimitiveKey key, std::span<const float> vec) {
    if (keys.empty() && values.empty() && dim == 0) dim = static_cast<std::uint32_t>(vec.size());
    if (vec.size() != dim) throw Error("embedding dimension mismatch");
    keys.push_back(key);
    values.insert(values.end(), vec.begin(), vec.end());
}

EmbeddingMatrix EmbeddingMatrix::sorted() const {
    std::vector<std::size_t> order(keys.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    EmbeddingMatrix out;
    out.dim = dim;
    out.keys.reserve(keys.size());
    out.values.reserve(values.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k > 0 && keys[order[k]] == keys[order[k - 1]]) {
            throw Error("duplicate embedding key (" + std::to_string(keys[order[k]].image_id) + ", " +
                        std::to_string(keys[order[k]].primitive_id) + ")");
        }
        out.keys.push_back(keys[order[k]]);
        const auto r = row(order[k]);
        out.values.insert(out.values.end(), r.begin(), r.end());
    }
    return out;
}

void EmbeddingMatrix::validate() const {
    if (values.size() != keys.size() * static_cast<std::size_t>(dim)) {
        throw Error("embedding matrix size mismatch");
    }
    for (float v : values) {
        if (!std::isfinite(v)) throw Error("embedding matrix contains non-finite values");
    }
}

}  // namespace segdiscover::embedding
