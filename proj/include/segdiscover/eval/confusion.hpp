#pragma once

#include <cstdint>
#include <vector>

#include "segdiscover/core/image.hpp"

namespace segdiscover::eval {

/// P x G pixel counts, rows = predicted groups, columns = ground-truth classes.
class ConfusionMatrix {
public:
    ConfusionMatrix() = default;
    ConfusionMatrix(std::size_t groups, std::size_t classes);
    static ConfusionMatrix from_rows(const std::vector<std::vector<std::uint64_t>>& rows);

    std::size_t groups() const { return groups_; }
    std::size_t classes() const { return classes_; }

    std::uint64_t& at(std::size_t p, std::size_t g) { return counts_[p * classes_ + g]; }
    std::uint64_t at(std::size_t p, std::size_t g) const { return counts_[p * classes_ + g]; }

    std::uint64_t row_total(std::size_t p) const;
    std::uint64_t column_total(std::size_t g) const;
    std::uint64_t total() const;

    /// Add one prediction/ground-truth pair. Ground-truth ignore pixels are skipped.
    void accumulate(const core::LabelMap& pred, const core::LabelMap& gt);

    ConfusionMatrix& operator+=(const ConfusionMatrix& other);
    bool operator==(const ConfusionMatrix&) const = default;

private:
    std::size_t groups_ = 0;
    std::size_t classes_ = 0;
    std::vector<std::uint64_t> counts_;
};

ConfusionMatrix confusion(const core::LabelMap& pred, const core::LabelMap& gt, std::size_t groups,
                          std::size_t classes);

}  // namespace segdiscover::eval
