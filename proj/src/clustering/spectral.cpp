#include "segdiscover/clustering/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <random>

#include "segdiscover/clustering/kmeans.hpp"
#include "segdiscover/core/error.hpp"

namespace segdiscover::clustering {

namespace {

constexpr int kRestarts = 10;

// Lloyd with k-means++ restarts; empty clusters are refilled with the point
// farthest from its centre so every cluster is used.
std::vector<std::uint32_t> cluster_rows(const Matrix& rows, int k, std::uint64_t seed) {
    std::vector<std::uint32_t> best;
    double best_inertia = std::numeric_limits<double>::infinity();
    for (int run = 0; run < kRestarts; ++run) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(run) * 0x9E3779B97F4A7C15ULL);
        KMeansResult fit = lloyd_kmeans(rows, kmeans_plusplus(rows, k, rng));
        auto assign = fit.assignments;

        std::vector<std::uint64_t> sizes(k, 0);
        for (auto a : assign) ++sizes[a];
        for (int c = 0; c < k; ++c) {
            if (sizes[c] > 0) continue;
            std::size_t far = rows.rows;
            double far_d = -1;
            for (std::size_t i = 0; i < rows.rows; ++i) {
                if (sizes[assign[i]] < 2) continue;
                const double d = squared_distance(rows.row(i), fit.model.centers.row(assign[i]));
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            --sizes[assign[far]];
            assign[far] = static_cast<std::uint32_t>(c);
            sizes[c] = 1;
        }

        double inertia = 0;
        {
            Matrix means(k, rows.cols);
            for (std::size_t i = 0; i < rows.rows; ++i) {
                auto m = means.row(assign[i]);
                for (std::size_t d = 0; d < rows.cols; ++d) m[d] += rows(i, d) / static_cast<double>(sizes[assign[i]]);
            }
            for (std::size_t i = 0; i < rows.rows; ++i) inertia += squared_distance(rows.row(i), means.row(assign[i]));
        }
        if (inertia < best_inertia - 1e-12) {
            best_inertia = inertia;
            best = std::move(assign);
        }
    }
    return best;
}

}  // namespace

Matrix rbf_affinity(const Matrix& centers, double sigma) {
    const std::size_t k = centers.rows;
    Matrix a(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const double v = std::exp(-sigma * squared_distance(centers.row(i), centers.row(j)));
            a(i, j) = v;
            a(j, i) = v;
        }
    }
    return a;
}

ReassignMap spectral_reassign(const Matrix& centers, int concepts, double sigma, std::uint64_t seed) {
    const std::size_t k = centers.rows;
    if (concepts < 1) throw Error("spectral_reassign: C must be >= 1");
    if (k < static_cast<std::size_t>(concepts)) throw Error("spectral_reassign: K < C");
    if (!(sigma > 0)) throw Error("spectral_reassign: sigma must be > 0");

    const Matrix affinity = rbf_affinity(centers, sigma);
    std::vector<double> degree(k, 0);
    std::vector<std::size_t> active, isolated;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) degree[i] += affinity(i, j);
        (degree[i] > std::numeric_limits<double>::min() ? active : isolated).push_back(i);
    }

    const std::size_t own = active.empty() ? std::min<std::size_t>(isolated.size(), concepts)
                                           : std::min<std::size_t>(isolated.size(), concepts - 1);
    const int spectral_k = concepts - static_cast<int>(own);

    constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> label(k, kUnset);

    if (!active.empty()) {
        const auto m = static_cast<Eigen::Index>(active.size());
        Eigen::MatrixXd lap(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) {
                const double norm = std::sqrt(degree[active[i]] * degree[active[j]]);
                lap(i, j) = (i == j ? 1.0 : 0.0) - affinity(active[i], active[j]) / norm;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
        if (solver.info() != Eigen::Success) throw Error("spectral_reassign: eigendecomposition failed");
        const Eigen::MatrixXd vecs = solver.eigenvectors().leftCols(spectral_k);

        Matrix rows(active.size(), spectral_k);
        for (Eigen::Index i = 0; i < m; ++i) {
            const double n = vecs.row(i).norm();
            for (int c = 0; c < spectral_k; ++c) rows(i, c) = n > 0 ? vecs(i, c) / n : 0.0;
        }
        const auto assign = cluster_rows(rows, spectral_k, seed);
        for (std::size_t i = 0; i < active.size(); ++i) label[active[i]] = assign[i];
    }

    for (std::size_t i = 0; i < own; ++i) label[isolated[i]] = static_cast<std::uint32_t>(spectral_k + i);
    for (std::size_t i = own; i < isolated.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (label[j] == kUnset) continue;
            const double d = squared_distance(centers.row(isolated[i]), centers.row(j));
            if (d < best) {
                best = d;
                arg = j;
            }
        }
        label[isolated[i]] = label[arg];
    }

    ReassignMap out;
    out.concepts = concepts;
    out.map.resize(k);
    std::vector<std::uint32_t> canon(concepts, kUnset);
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (canon[label[i]] == kUnset) canon[label[i]] = next++;
        out.map[i] = canon[label[i]];
    }
    return out;
}

}  // namespace segdiscover::clustering
