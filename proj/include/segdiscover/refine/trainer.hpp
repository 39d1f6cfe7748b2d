#pragma once

#include <cstdint>
#include <vector>

#include "segdiscover/core/image.hpp"
#include "segdiscover/refine/augment.hpp"
#include "segdiscover/refine/network.hpp"

namespace segdiscover::refine {

struct TrainParams {
    double lr = 1e-3;
    double momentum = 0.9;
    double weight_decay = 5e-4;
    int epochs = 30;
    int pixels_per_step = 4096;
    AugmentParams augment;
    std::uint64_t seed = 0;
};

struct TrainResult {
    RefinerModel model;
    /// Mean per-pixel loss. Entry 0 is the initial model on un-augmented
    /// images; entry e is the running mean over epoch e's steps.
    std::vector<double> loss_trace;
};

/// SGD with momentum and coupled weight decay:
///   g += wd * w;  v = momentum * v + g;  w -= lr * v.
void sgd_step(Parameters& params, const std::vector<double>& grad, std::vector<double>& velocity,
              double lr, double momentum, double weight_decay);

/// Train on pseudo-labelled images. Each epoch visits every image once in a
/// seeded shuffled order, applies `augment`, and takes one optimiser step on
/// the mean per-pixel cross-entropy of a seeded subsample of pixels.
TrainResult train_refiner(const std::vector<core::Image>& images, const std::vector<core::LabelMap>& labels,
                          int classes, const TrainParams& params);

}  // namespace segdiscover::refine
