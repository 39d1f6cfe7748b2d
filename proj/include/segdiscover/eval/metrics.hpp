#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "segdiscover/eval/confusion.hpp"
#include "segdiscover/eval/matching.hpp"

namespace segdiscover::eval {

/// G x G counts after relabelling predictions through a matching.
/// Rows are ground-truth classes, columns matched predicted classes.
struct ClassMatrix {
    std::size_t classes = 0;
    std::vector<std::uint64_t> counts;

    std::uint64_t at(std::size_t gt, std::size_t pred) const { return counts[gt * classes + pred]; }
    static ClassMatrix from_rows(const std::vector<std::vector<std::uint64_t>>& rows);
};

/// Pixels of unmatched groups stay in the ground-truth row totals but land in no column.
struct RelabeledCounts {
    ClassMatrix matrix;
    std::vector<std::uint64_t> gt_totals;
    std::uint64_t total = 0;
};

RelabeledCounts relabel(const ConfusionMatrix& cm, const Matching& match);

struct ClassScore {
    std::size_t class_id = 0;
    std::uint64_t intersection = 0;
    std::uint64_t gt_pixels = 0;
    std::uint64_t pred_pixels = 0;
    std::optional<double> iou;  // empty when the class is absent from both sides
};

struct MetricsReport {
    double miou = 0;
    double wiou = 0;
    double pacc = 0;
    std::uint64_t evaluated_pixels = 0;
    std::size_t groups = 0;
    std::size_t classes = 0;
    MatchingKind matching = MatchingKind::Majority;
    std::vector<ClassScore> per_class;
};

MetricsReport metrics(const RelabeledCounts& counts);
MetricsReport metrics(const ClassMatrix& m);
MetricsReport metrics(const ConfusionMatrix& cm, const Matching& match);

std::string matching_name(MatchingKind kind);
std::string format_table(const MetricsReport& r);
std::string format_csv(const MetricsReport& r);
std::string format_diagnostic(const std::vector<MajorityViolation>& v);

}  // namespace segdiscover::eval
