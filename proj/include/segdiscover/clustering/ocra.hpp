#pragma once

#include <cstdint>
#include <vector>

#include "segdiscover/clustering/kmeans.hpp"
#include "segdiscover/clustering/spectral.hpp"
#include "segdiscover/embedding/embedding_matrix.hpp"

namespace segdiscover::clustering {

struct OcraParams {
    int K = 200;  // overclusters
    int C = 27;   // concepts
    KMeansParams kmeans;
    double spectral_sigma = 1e-5;
    bool normalize = false;  // L2-normalise rows before clustering
    std::uint64_t seed = 0;
};

struct OcraResult {
    std::vector<std::uint32_t> overcluster;  // per input row
    std::vector<std::uint32_t> concepts;     // per input row, in 0..C-1
    KMeansModel kmeans;
    ReassignMap reassign;                    // K -> C
    std::vector<std::uint64_t> concept_sizes;
};

/// Overclustering + reassignment: mini-batch k-means to K clusters, spectral
/// clustering of the non-empty centres down to C concepts. Empty overclusters
/// inherit the concept of their nearest non-empty centre. With K == C the
/// reassignment is skipped and concepts are the k-means labels.
OcraResult ocra(const Matrix& points, const OcraParams& params);
OcraResult ocra(const embedding::EmbeddingMatrix& embeddings, const OcraParams& params);

}  // namespace segdiscover::clustering
