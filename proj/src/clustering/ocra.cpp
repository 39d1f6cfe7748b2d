#include "segdiscover/clustering/ocra.hpp"

#include <cmath>
#include <limits>

#include "segdiscover/core/error.hpp"

namespace segdiscover::clustering {

OcraResult ocra(const Matrix& input, const OcraParams& params) {
    if (params.C < 1 || params.K < params.C) throw Error("ocra: require K >= C >= 1");
    Matrix points = input;
    if (params.normalize) {
        for (std::size_t i = 0; i < points.rows; ++i) {
            auto r = points.row(i);
            double n = 0;
            for (double v : r) n += v * v;
            n = std::sqrt(n);
            if (n > 0) {
                for (double& v : r) v /= n;
            }
        }
    }

    OcraResult out;
    KMeansResult fit = minibatch_kmeans(points, params.K, params.kmeans, params.seed);
    out.overcluster = fit.assignments;
    out.kmeans = std::move(fit.model);
    const std::size_t k = static_cast<std::size_t>(params.K);

    out.reassign.concepts = params.C;
    out.reassign.map.assign(k, 0);
    if (params.K == params.C) {
        for (std::size_t c = 0; c < k; ++c) out.reassign.map[c] = static_cast<std::uint32_t>(c);
    } else {
        std::vector<std::size_t> alive;
        for (std::size_t c = 0; c < k; ++c) {
            if (out.kmeans.sizes[c] > 0) alive.push_back(c);
        }
        std::vector<std::uint32_t> alive_concept(alive.size());
        if (alive.size() <= static_cast<std::size_t>(params.C)) {
            for (std::size_t i = 0; i < alive.size(); ++i) alive_concept[i] = static_cast<std::uint32_t>(i);
        } else {
            Matrix centers(alive.size(), points.cols);
            for (std::size_t i = 0; i < alive.size(); ++i) {
                const auto src = out.kmeans.centers.row(alive[i]);
                std::copy(src.begin(), src.end(), centers.row(i).begin());
            }
            alive_concept = spectral_reassign(centers, params.C, params.spectral_sigma, params.seed + 1).map;
        }
        std::vector<bool> is_alive(k, false);
        for (std::size_t i = 0; i < alive.size(); ++i) {
            out.reassign.map[alive[i]] = alive_concept[i];
            is_alive[alive[i]] = true;
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (is_alive[c]) continue;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < alive.size(); ++i) {
                const double d = squared_distance(out.kmeans.centers.row(c), out.kmeans.centers.row(alive[i]));
                if (d < best) {
                    best = d;
                    out.reassign.map[c] = alive_concept[i];
                }
            }
        }
    }

    out.concepts.resize(out.overcluster.size());
    out.concept_sizes.assign(params.C, 0);
    for (std::size_t i = 0; i < out.overcluster.size(); ++i) {
        out.concepts[i] = out.reassign.map[out.overcluster[i]];
        ++out.concept_sizes[out.concepts[i]];
    }
    return out;
}

OcraResult ocra(const embedding::EmbeddingMatrix& embeddings, const OcraParams& params) {
    embeddings.validate();
    return ocra(Matrix::from_embeddings(embeddings), params);
}

}  // namespace segdiscover::clustering
