#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <vector>

#include "segdiscover/core/image.hpp"

namespace segdiscover::refine {

inline constexpr int kHiddenUnits = 64;

/// Two-layer per-pixel classifier: logits = W2 tanh(W1 x + b1) + b2.
/// Weights are stored as float32 in declaration order.
struct RefinerModel {
    int classes = 0;
    int features = 0;
    int hidden = 0;
    std::vector<float> w1;  // hidden x features
    std::vector<float> b1;  // hidden
    std::vector<float> w2;  // classes x hidden
    std::vector<float> b2;  // classes

    bool operator==(const RefinerModel&) const = default;
};

/// Flat double-precision view of the same parameters, used by the optimiser
/// and the gradient checks. Order: w1, b1, w2, b2.
struct Parameters {
    int classes = 0;
    int features = 0;
    int hidden = 0;
    std::vector<double> values;

    std::size_t w1_offset() const { return 0; }
    std::size_t b1_offset() const { return static_cast<std::size_t>(hidden) * features; }
    std::size_t w2_offset() const { return b1_offset() + hidden; }
    std::size_t b2_offset() const { return w2_offset() + static_cast<std::size_t>(classes) * hidden; }
    std::size_t size() const { return b2_offset() + classes; }

    static Parameters zeros(int classes, int features, int hidden);
    static Parameters from_model(const RefinerModel& m);
    RefinerModel to_model() const;
};

/// Xavier-uniform hidden layer, zero biases, and a near-zero U(-1/hidden, 1/hidden)
/// output layer so the initial softmax is close to uniform.
Parameters initialize_parameters(int classes, int features, int hidden, std::mt19937_64& rng);

/// Summed pixel-wise softmax cross-entropy over the given samples.
/// `features` holds samples x F floats, `labels` one class per sample.
/// Accumulates d(loss)/d(params) into `grad` when non-null (resized as needed).
double cross_entropy(const Parameters& params, std::span<const float> features,
                     std::span<const std::uint32_t> labels, std::vector<double>* grad);

/// Class probabilities for every sample (samples x C, row sums 1).
std::vector<double> softmax_probabilities(const Parameters& params, std::span<const float> features);

struct Prediction {
    core::LabelMap labels;           // argmax, ties to the lowest class id
    std::vector<float> probabilities;  // H*W*C, pixel-major
};

Prediction predict(const RefinerModel& model, const core::Image& img);

// "SGDR" | u32 version=1 | u32 C | u32 F | u32 hidden | f32 w1 | f32 b1 | f32 w2 | f32 b2 (little-endian)
void save_model(const RefinerModel& model, const std::filesystem::path& path);
RefinerModel load_model(const std::filesystem::path& path);

}  // namespace segdiscover::refine
