#include "segdiscover/eval/metrics.hpp"

#include <cstdio>
#include <sstream>

#include "segdiscover/core/error.hpp"

namespace segdiscover::eval {

namespace {

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

ClassMatrix ClassMatrix::from_rows(const std::vector<std::vector<std::uint64_t>>& rows) {
    ClassMatrix m;
    m.classes = rows.size();
    m.counts.assign(m.classes * m.classes, 0);
    for (std::size_t g = 0; g < rows.size(); ++g) {
        if (rows[g].size() != m.classes) throw Error("class matrix must be square");
        for (std::size_t p = 0; p < m.classes; ++p) m.counts[g * m.classes + p] = rows[g][p];
    }
    return m;
}

RelabeledCounts relabel(const ConfusionMatrix& cm, const Matching& match) {
    if (match.group_to_class.size() != cm.groups()) throw Error("matching does not cover the predicted groups");
    const std::size_t G = cm.classes();
    RelabeledCounts r;
    r.matrix.classes = G;
    r.matrix.counts.assign(G * G, 0);
    r.gt_totals.assign(G, 0);
    for (std::size_t p = 0; p < cm.groups(); ++p) {
        const int target = match.group_to_class[p];
        if (target >= static_cast<int>(G)) throw Error("matching refers to class " + std::to_string(target));
        for (std::size_t g = 0; g < G; ++g) {
            const std::uint64_t n = cm.at(p, g);
            r.gt_totals[g] += n;
            r.total += n;
            if (target != Matching::kUnmatched) r.matrix.counts[g * G + static_cast<std::size_t>(target)] += n;
        }
    }
    return r;
}

MetricsReport metrics(const RelabeledCounts& c) {
    if (c.total == 0) throw Error("metrics: zero evaluated pixels");
    const std::size_t G = c.matrix.classes;
    MetricsReport r;
    r.classes = G;
    r.groups = G;
    r.evaluated_pixels = c.total;

    std::uint64_t correct = 0;
    double iou_sum = 0;
    std::size_t present = 0;
    for (std::size_t g = 0; g < G; ++g) {
        ClassScore s;
        s.class_id = g;
        s.intersection = c.matrix.at(g, g);
        s.gt_pixels = c.gt_totals[g];
        for (std::size_t k = 0; k < G; ++k) s.pred_pixels += c.matrix.at(k, g);
        correct += s.intersection;
        if (s.gt_pixels + s.pred_pixels > 0) {
            const double iou = static_cast<double>(s.intersection) /
                               static_cast<double>(s.gt_pixels + s.pred_pixels - s.intersection);
            s.iou = iou;
            iou_sum += iou;
            ++present;
            if (s.gt_pixels > 0) r.wiou += static_cast<double>(s.gt_pixels) / static_cast<double>(c.total) * iou;
        }
        r.per_class.push_back(s);
    }
    r.miou = iou_sum / static_cast<double>(present);
    r.pacc = static_cast<double>(correct) / static_cast<double>(c.total);
    return r;
}

MetricsReport metrics(const ClassMatrix& m) {
    RelabeledCounts c;
    c.matrix = m;
    c.gt_totals.assign(m.classes, 0);
    for (std::size_t g = 0; g < m.classes; ++g) {
        for (std::size_t p = 0; p < m.classes; ++p) c.gt_totals[g] += m.at(g, p);
        c.total += c.gt_totals[g];
    }
    return metrics(c);
}

MetricsReport metrics(const ConfusionMatrix& cm, const Matching& match) {
    MetricsReport r = metrics(relabel(cm, match));
    r.groups = cm.groups();
    r.matching = match.kind;
    return r;
}

std::string matching_name(MatchingKind kind) {
    return kind == MatchingKind::Majority ? "majority" : "hungarian";
}

std::string format_table(const MetricsReport& r) {
    std::ostringstream os;
    os << "matching  " << matching_name(r.matching) << "\n";
    os << "groups    " << r.groups << "\n";
    os << "classes   " << r.classes << "\n";
    os << "pixels    " << r.evaluated_pixels << "\n";
    os << "mIoU      " << fixed(r.miou) << "\n";
    os << "wIoU      " << fixed(r.wiou) << "\n";
    os << "pAcc      " << fixed(r.pacc) << "\n\n";
    os << "class  iou       gt_pixels  pred_pixels\n";
    for (const auto& s : r.per_class) {
        char line[96];
        std::snprintf(line, sizeof line, "%-6zu %-9s %-10llu %llu\n", s.class_id,
                      s.iou ? fixed(*s.iou).c_str() : "absent", static_cast<unsigned long long>(s.gt_pixels),
                      static_cast<unsigned long long>(s.pred_pixels));
        os << line;
    }
    return os.str();
}

std::string format_csv(const MetricsReport& r) {
    std::ostringstream os;
    os << "metric,value\n";
    os << "mIoU," << fixed(r.miou) << "\n";
    os << "wIoU," << fixed(r.wiou) << "\n";
    os << "pAcc," << fixed(r.pacc) << "\n";
    os << "groups," << r.groups << "\n";
    os << "pixels," << r.evaluated_pixels << "\n";
    for (const auto& s : r.per_class) {
        os << "iou_class_" << s.class_id << "," << (s.iou ? fixed(*s.iou) : std::string("absent")) << "\n";
    }
    return os.str();
}

std::string format_diagnostic(const std::vector<MajorityViolation>& v) {
    std::ostringstream os;
    if (v.empty()) {
        os << "every matched group holds a strict plurality of its class\n";
        return os.str();
    }
    os << "group assigned majority fraction\n";
    for (const auto& x : v) {
        os << x.group << " " << x.assigned_class << " " << x.majority_class << " " << fixed(x.fraction) << "\n";
    }
    return os.str();
}

}  // namespace segdiscover::eval
