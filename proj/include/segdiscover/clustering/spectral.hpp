#pragma once

#include <cstdint>
#include <vector>

#include "segdiscover/clustering/matrix.hpp"

namespace segdiscover::clustering {

/// Overcluster id -> concept id.
struct ReassignMap {
    int concepts = 0;
    std::vector<std::uint32_t> map;
};

/// Gaussian-kernel affinity exp(-sigma * |a - b|^2) with a zero diagonal.
Matrix rbf_affinity(const Matrix& centers, double sigma);

/// Normalised spectral clustering of the K centres into C concepts:
/// L = I - D^-1/2 A D^-1/2, eigenvectors of the C smallest eigenvalues,
/// row-normalised, then seeded k-means on the rows.
///
/// Centres with zero degree are isolated: each gets its own concept while at
/// least one concept remains for the connected centres; any further isolated
/// centre takes the concept of its nearest already-labelled centre. Concept
/// ids are numbered in order of first appearance over centre index.
ReassignMap spectral_reassign(const Matrix& centers, int concepts, double sigma, std::uint64_t seed);

}  // namespace segdiscover::clustering
