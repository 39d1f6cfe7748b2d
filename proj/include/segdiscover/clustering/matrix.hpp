#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "segdiscover/embedding/embedding_matrix.hpp"

namespace segdiscover::clustering {

/// Row-major dense matrix of doubles; rows are points.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static Matrix from_embeddings(const embedding::EmbeddingMatrix& m);
};

double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace segdiscover::clustering
