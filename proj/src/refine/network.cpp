#include "segdiscover/refine/network.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "segdiscover/core/error.hpp"
#include "segdiscover/refine/features.hpp"

namespace segdiscover::refine {

namespace {

constexpr std::uint32_t kModelVersion = 1;

// Forward pass for one sample; hidden activations and logits are written out.
void forward(const Parameters& p, const float* x, std::vector<double>& hidden, std::vector<double>& logits) {
    const double* w1 = p.values.data() + p.w1_offset();
    const double* b1 = p.values.data() + p.b1_offset();
    const double* w2 = p.values.data() + p.w2_offset();
    const double* b2 = p.values.data() + p.b2_offset();
    for (int j = 0; j < p.hidden; ++j) {
        double a = b1[j];
        const double* row = w1 + static_cast<std::size_t>(j) * p.features;
        for (int f = 0; f < p.features; ++f) a += row[f] * x[f];
        hidden[j] = std::tanh(a);
    }
    for (int c = 0; c < p.classes; ++c) {
        double a = b2[c];
        const double* row = w2 + static_cast<std::size_t>(c) * p.hidden;
        for (int j = 0; j < p.hidden; ++j) a += row[j] * hidden[j];
        logits[c] = a;
    }
}

// In-place softmax; returns log-sum-exp.
double softmax(std::vector<double>& logits) {
    const double mx = *std::max_element(logits.begin(), logits.end());
    double sum = 0;
    for (double& v : logits) {
        v = std::exp(v - mx);
        sum += v;
    }
    for (double& v : logits) v /= sum;
    return mx + std::log(sum);
}

void put_u32(std::vector<char>& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const char* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
    return v;
}

}  // namespace

Parameters Parameters::zeros(int classes, int features, int hidden) {
    Parameters p;
    p.classes = classes;
    p.features = features;
    p.hidden = hidden;
    p.values.assign(p.size(), 0.0);
    return p;
}

Parameters Parameters::from_model(const RefinerModel& m) {
    Parameters p = zeros(m.classes, m.features, m.hidden);
    std::copy(m.w1.begin(), m.w1.end(), p.values.begin() + p.w1_offset());
    std::copy(m.b1.begin(), m.b1.end(), p.values.begin() + p.b1_offset());
    std::copy(m.w2.begin(), m.w2.end(), p.values.begin() + p.w2_offset());
    std::copy(m.b2.begin(), m.b2.end(), p.values.begin() + p.b2_offset());
    return p;
}

RefinerModel Parameters::to_model() const {
    RefinerModel m;
    m.classes = classes;
    m.features = features;
    m.hidden = hidden;
    auto take = [&](std::size_t from, std::size_t to) {
        std::vector<float> out(to - from);
        for (std::size_t i = from; i < to; ++i) out[i - from] = static_cast<float>(values[i]);
        return out;
    };
    m.w1 = take(w1_offset(), b1_offset());
    m.b1 = take(b1_offset(), w2_offset());
    m.w2 = take(w2_offset(), b2_offset());
    m.b2 = take(b2_offset(), size());
    return m;
}

Parameters initialize_parameters(int classes, int features, int hidden, std::mt19937_64& rng) {
    Parameters p = Parameters::zeros(classes, features, hidden);
    const double limit1 = std::sqrt(6.0 / (features + hidden));
    std::uniform_real_distribution<double> u1(-limit1, limit1);
    for (std::size_t i = p.w1_offset(); i < p.b1_offset(); ++i) p.values[i] = u1(rng);
    std::uniform_real_distribution<double> u2(-1.0 / hidden, 1.0 / hidden);
    for (std::size_t i = p.w2_offset(); i < p.b2_offset(); ++i) p.values[i] = u2(rng);
    return p;
}

double cross_entropy(const Parameters& p, std::span<const float> features,
                     std::span<const std::uint32_t> labels, std::vector<double>* grad) {
    const std::size_t samples = labels.size();
    if (features.size() != samples * static_cast<std::size_t>(p.features)) {
        throw Error("cross_entropy: feature/label count mismatch");
    }
    if (grad) grad->assign(p.size(), 0.0);
    std::vector<double> hidden(p.hidden), probs(p.classes), dhidden(p.hidden);
    double loss = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        const float* x = features.data() + s * p.features;
        const std::uint32_t y = labels[s];
        if (y >= static_cast<std::uint32_t>(p.classes)) throw Error("cross_entropy: label out of range");
        forward(p, x, hidden, probs);
        const double logit_y = probs[y];
        loss += softmax(probs) - logit_y;
        if (!grad) continue;

        double* g = grad->data();
        const double* w2 = p.values.data() + p.w2_offset();
        std::fill(dhidden.begin(), dhidden.end(), 0.0);
        for (int c = 0; c < p.classes; ++c) {
            const double dlogit = probs[c] - (static_cast<std::uint32_t>(c) == y ? 1.0 : 0.0);
            g[p.b2_offset() + c] += dlogit;
            double* gw2 = g + p.w2_offset() + static_cast<std::size_t>(c) * p.hidden;
            const double* row = w2 + static_cast<std::size_t>(c) * p.hidden;
            for (int j = 0; j < p.hidden; ++j) {
                gw2[j] += dlogit * hidden[j];
                dhidden[j] += dlogit * row[j];
            }
        }
        for (int j = 0; j < p.hidden; ++j) {
            const double da = dhidden[j] * (1.0 - hidden[j] * hidden[j]);
            g[p.b1_offset() + j] += da;
            double* gw1 = g + p.w1_offset() + static_cast<std::size_t>(j) * p.features;
            for (int f = 0; f < p.features; ++f) gw1[f] += da * x[f];
        }
    }
    return loss;
}

std::vector<double> softmax_probabilities(const Parameters& p, std::span<const float> features) {
    const std::size_t samples = features.size() / p.features;
    std::vector<double> out(samples * p.classes);
    std::vector<double> hidden(p.hidden), probs(p.classes);
    for (std::size_t s = 0; s < samples; ++s) {
        forward(p, features.data() + s * p.features, hidden, probs);
        softmax(probs);
        std::copy(probs.begin(), probs.end(), out.begin() + s * p.classes);
    }
    return out;
}

Prediction predict(const RefinerModel& model, const core::Image& img) {
    if (model.features != kFeatureCount) throw Error("predict: model expects a different feature count");
    const Parameters p = Parameters::from_model(model);
    const std::vector<float> feats = compute_features(img);
    const std::vector<double> probs = softmax_probabilities(p, feats);

    Prediction out;
    out.labels = core::LabelMap(img.height, img.width);
    out.probabilities.resize(probs.size());
    const std::size_t c = static_cast<std::size_t>(model.classes);
    for (std::size_t px = 0; px < img.pixel_count(); ++px) {
        const double* row = probs.data() + px * c;
        out.labels.labels[px] = static_cast<std::uint32_t>(std::max_element(row, row + c) - row);
        for (std::size_t k = 0; k < c; ++k) out.probabilities[px * c + k] = static_cast<float>(row[k]);
    }
    return out;
}

void save_model(const RefinerModel& m, const std::filesystem::path& path) {
    const std::size_t expected_w1 = static_cast<std::size_t>(m.hidden) * m.features;
    const std::size_t expected_w2 = static_cast<std::size_t>(m.classes) * m.hidden;
    if (m.w1.size() != expected_w1 || m.b1.size() != static_cast<std::size_t>(m.hidden) ||
        m.w2.size() != expected_w2 || m.b2.size() != static_cast<std::size_t>(m.classes)) {
        throw Error("save_model: inconsistent weight shapes");
    }
    std::vector<char> buf{'S', 'G', 'D', 'R'};
    put_u32(buf, kModelVersion);
    put_u32(buf, static_cast<std::uint32_t>(m.classes));
    put_u32(buf, static_cast<std::uint32_t>(m.features));
    put_u32(buf, static_cast<std::uint32_t>(m.hidden));
    for (const auto* block : {&m.w1, &m.b1, &m.w2, &m.b2}) {
        for (float v : *block) put_u32(buf, std::bit_cast<std::uint32_t>(v));
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot create model file: " + path.string());
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

RefinerModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("model file not found: " + path.string());
    const std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const std::string where = " in " + path.string();
    if (buf.size() < 20) throw Error("truncated model header" + where);
    if (std::memcmp(buf.data(), "SGDR", 4) != 0) throw Error("bad magic" + where);
    if (get_u32(buf.data() + 4) != kModelVersion) throw Error("version mismatch" + where);

    RefinerModel m;
    m.classes = static_cast<int>(get_u32(buf.data() + 8));
    m.features = static_cast<int>(get_u32(buf.data() + 12));
    m.hidden = static_cast<int>(get_u32(buf.data() + 16));
    const std::size_t n1 = static_cast<std::size_t>(m.hidden) * m.features;
    const std::size_t n2 = static_cast<std::size_t>(m.classes) * m.hidden;
    const std::size_t total = n1 + m.hidden + n2 + m.classes;
    if (buf.size() != 20 + 4 * total) throw Error("model payload size mismatch" + where);

    const char* p = buf.data() + 20;
    auto read_block = [&](std::vector<float>& dst, std::size_t n) {
        dst.resize(n);
        for (std::size_t i = 0; i < n; ++i, p += 4) {
            dst[i] = std::bit_cast<float>(get_u32(p));
            if (!std::isfinite(dst[i])) throw Error("non-finite weight" + where);
        }
    };
    read_block(m.w1, n1);
    read_block(m.b1, m.hidden);
    read_block(m.w2, n2);
    read_block(m.b2, m.classes);
    return m;
}

}  // namespace segdiscover::refine
