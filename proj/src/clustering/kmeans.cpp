#include "segdiscover/clustering/kmeans.hpp"

#include <cmath>
#include <limits>

#include "segdiscover/core/error.hpp"

namespace segdiscover::clustering {

namespace {

void check_inputs(const Matrix& points, int k) {
    if (k < 1) throw Error("k-means: K must be >= 1");
    if (points.rows < static_cast<std::size_t>(k)) {
        throw Error("k-means: N (" + std::to_string(points.rows) + ") < K (" + std::to_string(k) + ")");
    }
    for (double v : points.data) {
        if (!std::isfinite(v)) throw Error("k-means: non-finite input");
    }
}

std::uint32_t nearest(const Matrix& centers, std::span<const double> x, double& best) {
    std::uint32_t arg = 0;
    best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.rows; ++c) {
        const double d = squared_distance(x, centers.row(c));
        if (d < best) {
            best = d;
            arg = static_cast<std::uint32_t>(c);
        }
    }
    return arg;
}

}  // namespace

Matrix kmeans_plusplus(const Matrix& points, int k, std::mt19937_64& rng) {
    check_inputs(points, k);
    const std::size_t n = points.rows;
    Matrix centers(k, points.cols);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::size_t first = pick(rng);
    std::copy(points.row(first).begin(), points.row(first).end(), centers.row(0).begin());

    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(points.row(i), centers.row(0));
    for (int c = 1; c < k; ++c) {
        double total = 0;
        for (double v : d2) total += v;
        std::size_t chosen;
        if (total <= 0) {
            chosen = pick(rng);
        } else {
            const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
            double acc = 0;
            chosen = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (u < acc && d2[i] > 0) {
                    chosen = i;
                    break;
                }
            }
            while (d2[chosen] <= 0 && chosen > 0) --chosen;  // u landed on the rounding tail
        }
        std::copy(points.row(chosen).begin(), points.row(chosen).end(), centers.row(c).begin());
        for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], squared_distance(points.row(i), centers.row(c)));
    }
    return centers;
}

std::vector<std::uint32_t> assign_nearest(const Matrix& points, const Matrix& centers, double* inertia) {
    std::vector<std::uint32_t> out(points.rows);
    double total = 0;
    for (std::size_t i = 0; i < points.rows; ++i) {
        double best;
        out[i] = nearest(centers, points.row(i), best);
        total += best;
    }
    if (inertia) *inertia = points.rows ? total / static_cast<double>(points.rows) : 0.0;
    return out;
}

KMeansResult minibatch_kmeans(const Matrix& points, int k, const KMeansParams& params, std::uint64_t seed) {
    check_inputs(points, k);
    if (params.batch_size < 1 || params.max_iter < 1 || params.patience < 1) {
        throw Error("k-means: batch_size, max_iter and patience must be >= 1");
    }
    std::mt19937_64 rng(seed);
    const std::size_t n = points.rows;
    const std::size_t dim = points.cols;

    KMeansResult result;
    Matrix centers = kmeans_plusplus(points, k, rng);
    std::vector<double> counts(k, 0.0);
    std::vector<std::size_t> batch;
    const bool full = n <= static_cast<std::size_t>(params.batch_size);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const double tolerance = params.tolerance_per_dim * static_cast<double>(dim);

    Matrix sums(k, dim);
    std::vector<double> batch_counts(k);
    int quiet = 0;
    int iter = 0;
    while (iter < params.max_iter) {
        ++iter;
        batch.clear();
        if (full) {
            for (std::size_t i = 0; i < n; ++i) batch.push_back(i);
        } else {
            for (int b = 0; b < params.batch_size; ++b) batch.push_back(pick(rng));
        }

        std::fill(sums.data.begin(), sums.data.end(), 0.0);
        std::fill(batch_counts.begin(), batch_counts.end(), 0.0);
        for (std::size_t idx : batch) {
            double best;
            const std::uint32_t c = nearest(centers, points.row(idx), best);
            batch_counts[c] += 1;
            auto s = sums.row(c);
            const auto x = points.row(idx);
            for (std::size_t d = 0; d < dim; ++d) s[d] += x[d];
        }

        double shift = 0;
        for (int c = 0; c < k; ++c) {
            if (batch_counts[c] == 0) continue;
            const double total = counts[c] + batch_counts[c];
            auto ctr = centers.row(c);
            const auto s = sums.row(c);
            for (std::size_t d = 0; d < dim; ++d) {
                const double updated = (ctr[d] * counts[c] + s[d]) / total;
                shift += (updated - ctr[d]) * (updated - ctr[d]);
                ctr[d] = updated;
            }
            counts[c] = total;
        }
        quiet = shift < tolerance ? quiet + 1 : 0;
        if (quiet >= params.patience) break;
    }

    result.assignments = assign_nearest(points, centers, &result.model.inertia);
    result.model.centers = std::move(centers);
    result.model.iterations = iter;
    result.model.sizes.assign(k, 0);
    for (std::uint32_t a : result.assignments) ++result.model.sizes[a];
    return result;
}

KMeansResult lloyd_kmeans(const Matrix& points, Matrix centers, int max_iter) {
    check_inputs(points, static_cast<int>(centers.rows));
    const std::size_t k = centers.rows;
    const std::size_t dim = points.cols;
    KMeansResult result;
    double inertia = 0;
    std::vector<std::uint32_t> assign = assign_nearest(points, centers, &inertia);
    result.inertia_trace.push_back(inertia);

    int iter = 0;
    for (; iter < max_iter; ++iter) {
        Matrix sums(k, dim);
        std::vector<std::uint64_t> counts(k, 0);
        for (std::size_t i = 0; i < points.rows; ++i) {
            ++counts[assign[i]];
            auto s = sums.row(assign[i]);
            const auto x = points.row(i);
            for (std::size_t d = 0; d < dim; ++d) s[d] += x[d];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) continue;
            auto ctr = centers.row(c);
            const auto s = sums.row(c);
            for (std::size_t d = 0; d < dim; ++d) ctr[d] = s[d] / static_cast<double>(counts[c]);
        }
        std::vector<std::uint32_t> next = assign_nearest(points, centers, &inertia);
        result.inertia_trace.push_back(inertia);
        const bool stable = next == assign;
        assign = std::move(next);
        if (stable) {
            ++iter;
            break;
        }
    }
    result.assignments = std::move(assign);
    result.model.centers = std::move(centers);
    result.model.inertia = inertia;
    result.model.iterations = iter;
    result.model.sizes.assign(k, 0);
    for (std::uint32_t a : result.assignments) ++result.model.sizes[a];
    return result;
}

}  // namespace segdiscover::clustering
