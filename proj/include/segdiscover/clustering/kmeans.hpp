#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "segdiscover/clustering/matrix.hpp"

namespace segdiscover::clustering {

struct KMeansParams {
    int batch_size = 1000;
    int max_iter = 10000;          // mini-batches
    int patience = 100;            // consecutive quiet batches before stopping
    double tolerance_per_dim = 1e-8;  // quiet batch: total squared centre shift < tol * D
};

struct KMeansModel {
    Matrix centers;                   // K x D
    double inertia = 0;               // mean squared distance to the assigned centre
    int iterations = 0;
    std::vector<std::uint64_t> sizes;  // points per centre in the final assignment
};

struct KMeansResult {
    KMeansModel model;
    std::vector<std::uint32_t> assignments;
    std::vector<double> inertia_trace;  // Lloyd only: inertia after each assignment step
};

/// k-means++ seeding: first centre uniform, then D^2-weighted sampling.
Matrix kmeans_plusplus(const Matrix& points, int k, std::mt19937_64& rng);

/// Nearest centre per point (ties to the lowest index) and mean squared distance.
std::vector<std::uint32_t> assign_nearest(const Matrix& points, const Matrix& centers, double* inertia = nullptr);

/// Mini-batch k-means with per-centre running-count updates. Deterministic
/// for a fixed seed. Throws when N < K or inputs are non-finite.
KMeansResult minibatch_kmeans(const Matrix& points, int k, const KMeansParams& params, std::uint64_t seed);

/// Full-batch Lloyd iterations from the given centres until assignments stop
/// changing or max_iter is reached. Empty clusters keep their previous centre.
KMeansResult lloyd_kmeans(const Matrix& points, Matrix centers, int max_iter = 300);

}  // namespace segdiscover::clustering
