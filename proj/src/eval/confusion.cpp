#include "segdiscover/eval/confusion.hpp"

#include <string>

#include "segdiscover/core/error.hpp"

namespace segdiscover::eval {

ConfusionMatrix::ConfusionMatrix(std::size_t groups, std::size_t classes)
    : groups_(groups), classes_(classes), counts_(groups * classes, 0) {}

ConfusionMatrix ConfusionMatrix::from_rows(const std::vector<std::vector<std::uint64_t>>& rows) {
    const std::size_t g = rows.empty() ? 0 : rows.front().size();
    ConfusionMatrix cm(rows.size(), g);
    for (std::size_t p = 0; p < rows.size(); ++p) {
        if (rows[p].size() != g) throw Error("confusion matrix rows differ in length");
        for (std::size_t c = 0; c < g; ++c) cm.at(p, c) = rows[p][c];
    }
    return cm;
}

std::uint64_t ConfusionMatrix::row_total(std::size_t p) const {
    std::uint64_t s = 0;
    for (std::size_t g = 0; g < classes_; ++g) s += at(p, g);
    return s;
}

std::uint64_t ConfusionMatrix::column_total(std::size_t g) const {
    std::uint64_t s = 0;
    for (std::size_t p = 0; p < groups_; ++p) s += at(p, g);
    return s;
}

std::uint64_t ConfusionMatrix::total() const {
    std::uint64_t s = 0;
    for (std::uint64_t v : counts_) s += v;
    return s;
}

void ConfusionMatrix::accumulate(const core::LabelMap& pred, const core::LabelMap& gt) {
    if (pred.height != gt.height || pred.width != gt.width) {
        throw Error("confusion: prediction " + std::to_string(pred.height) + "x" + std::to_string(pred.width) +
                    " and ground truth " + std::to_string(gt.height) + "x" + std::to_string(gt.width) +
                    " differ in size");
    }
    for (std::size_t i = 0; i < gt.labels.size(); ++i) {
        const std::uint32_t g = gt.labels[i];
        if (g == core::LabelMap::kIgnore) continue;
        const std::uint32_t p = pred.labels[i];
        if (p >= groups_) throw Error("confusion: predicted label " + std::to_string(p) + " >= " + std::to_string(groups_));
        if (g >= classes_) throw Error("confusion: ground-truth label " + std::to_string(g) + " >= " + std::to_string(classes_));
        ++at(p, g);
    }
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
    if (other.groups_ != groups_ || other.classes_ != classes_) throw Error("confusion: shape mismatch in sum");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    return *this;
}

ConfusionMatrix confusion(const core::LabelMap& pred, const core::LabelMap& gt, std::size_t groups,
                          std::size_t classes) {
    ConfusionMatrix cm(groups, classes);
    cm.accumulate(pred, gt);
    return cm;
}

}  // namespace segdiscover::eval
