#include "segdiscover/refine/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "segdiscover/core/error.hpp"
#include "segdiscover/refine/features.hpp"

namespace segdiscover::refine {

namespace {

struct Batch {
    std::vector<float> features;
    std::vector<std::uint32_t> labels;
};

Batch sample_pixels(const core::Image& img, const core::LabelMap& lbl, int budget, std::mt19937_64& rng) {
    const std::vector<float> feats = compute_features(img);
    const std::size_t n = img.pixel_count();
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::size_t> picked;
    if (n <= static_cast<std::size_t>(budget)) {
        picked = std::move(all);
    } else {
        picked.reserve(budget);
        std::sample(all.begin(), all.end(), std::back_inserter(picked), budget, rng);
    }
    Batch b;
    b.features.reserve(picked.size() * kFeatureCount);
    b.labels.reserve(picked.size());
    for (std::size_t px : picked) {
        b.features.insert(b.features.end(), feats.begin() + px * kFeatureCount,
                          feats.begin() + (px + 1) * kFeatureCount);
        b.labels.push_back(lbl.labels[px]);
    }
    return b;
}

}  // namespace

void sgd_step(Parameters& params, const std::vector<double>& grad, std::vector<double>& velocity,
              double lr, double momentum, double weight_decay) {
    if (velocity.size() != params.values.size()) velocity.assign(params.values.size(), 0.0);
    for (std::size_t i = 0; i < params.values.size(); ++i) {
        const double g = grad[i] + weight_decay * params.values[i];
        velocity[i] = momentum * velocity[i] + g;
        params.values[i] -= lr * velocity[i];
    }
}

TrainResult train_refiner(const std::vector<core::Image>& images, const std::vector<core::LabelMap>& labels,
                          int classes, const TrainParams& params) {
    if (classes < 2) throw Error("train_refiner: need at least 2 concepts");
    if (images.size() != labels.size()) throw Error("train_refiner: pseudo-labels missing for some images");
    if (images.empty()) throw Error("train_refiner: no training images");
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (images[i].height != labels[i].height || images[i].width != labels[i].width) {
            throw Error("train_refiner: image " + std::to_string(i) + " and its pseudo-labels differ in size");
        }
        for (std::uint32_t v : labels[i].labels) {
            if (v >= static_cast<std::uint32_t>(classes)) {
                throw Error("train_refiner: pseudo-label of image " + std::to_string(i) + " out of range");
            }
        }
    }

    std::mt19937_64 rng(params.seed);
    Parameters weights = initialize_parameters(classes, kFeatureCount, kHiddenUnits, rng);
    std::vector<double> velocity(weights.size(), 0.0);
    std::vector<double> grad;

    TrainResult result;
    {
        std::mt19937_64 probe(params.seed ^ 0x5EEDF00DULL);
        double total = 0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < images.size(); ++i) {
            const Batch b = sample_pixels(images[i], labels[i], params.pixels_per_step, probe);
            total += cross_entropy(weights, b.features, b.labels, nullptr);
            count += b.labels.size();
        }
        result.loss_trace.push_back(total / static_cast<double>(count));
    }

    std::vector<std::size_t> order(images.size());
    std::iota(order.begin(), order.end(), 0);
    for (int epoch = 1; epoch <= params.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        double total = 0;
        std::size_t count = 0;
        for (std::size_t idx : order) {
            const auto [img, lbl] = augment(images[idx], labels[idx], params.augment, rng());
            const Batch b = sample_pixels(img, lbl, params.pixels_per_step, rng);
            const double loss = cross_entropy(weights, b.features, b.labels, &grad);
            if (!std::isfinite(loss)) {
                std::ostringstream msg;
                msg << "train_refiner: non-finite loss at epoch " << epoch << ", image " << idx
                    << " (lr=" << params.lr << ", momentum=" << params.momentum << ")";
                throw Error(msg.str());
            }
            const double inv = 1.0 / static_cast<double>(b.labels.size());
            for (auto& g : grad) g *= inv;
            sgd_step(weights, grad, velocity, params.lr, params.momentum, params.weight_decay);
            total += loss;
            count += b.labels.size();
        }
        result.loss_trace.push_back(total / static_cast<double>(count));
    }
    result.model = weights.to_model();
    return result;
}

}  // namespace segdiscover::refine
