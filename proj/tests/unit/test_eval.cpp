#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "segdiscover/core/error.hpp"
#include "segdiscover/eval/confusion.hpp"
#include "segdiscover/eval/matching.hpp"
#include "segdiscover/eval/metrics.hpp"

using namespace segdiscover;
using namespace segdiscover::eval;
using core::LabelMap;

namespace {

ConfusionMatrix random_cm(std::size_t p, std::size_t g, std::mt19937_64& rng, std::uint64_t max_count) {
    std::uniform_int_distribution<std::uint64_t> count(0, max_count);
    ConfusionMatrix cm(p, g);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < g; ++j) cm.at(i, j) = count(rng);
    }
    return cm;
}

// Every injective group -> class map with the optimal objective, in group order.
std::vector<std::vector<int>> optimal_maps(const ConfusionMatrix& cm) {
    const std::size_t n = std::max(cm.groups(), cm.classes());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = 0;
    std::vector<std::vector<int>> out;
    do {
        std::uint64_t obj = 0;
        std::vector<int> map(cm.groups());
        for (std::size_t p = 0; p < cm.groups(); ++p) {
            map[p] = perm[p] < static_cast<int>(cm.classes()) ? perm[p] : Matching::kUnmatched;
            if (map[p] != Matching::kUnmatched) obj += cm.at(p, map[p]);
        }
        if (obj > best || out.empty()) {
            best = obj;
            out.clear();
        }
        if (obj == best && std::find(out.begin(), out.end(), map) == out.end()) out.push_back(map);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace

TEST_CASE("confusion counts pixel pairs") {
    LabelMap pred(1, 100), gt(1, 100);
    for (int i = 0; i < 100; ++i) pred.labels[i] = gt.labels[i] = i < 60 ? 0 : 1;
    const ConfusionMatrix cm = confusion(pred, gt, 2, 2);
    CHECK(cm == ConfusionMatrix::from_rows({{60, 0}, {0, 40}}));

    LabelMap ignore(1, 100, LabelMap::kIgnore);
    CHECK(confusion(pred, ignore, 2, 2).total() == 0);

    LabelMap p4(1, 4), g4(1, 4);
    p4.labels = {0, 0, 1, 1};
    g4.labels = {0, 1, 1, 1};
    CHECK(confusion(p4, g4, 2, 2) == ConfusionMatrix::from_rows({{1, 1}, {0, 2}}));
}

TEST_CASE("confusion errors") {
    LabelMap a(2, 2), b(2, 3);
    CHECK_THROWS_AS(confusion(a, b, 2, 2), Error);
    LabelMap p(1, 2), g(1, 2);
    p.labels = {0, 3};
    CHECK_THROWS_AS(confusion(p, g, 2, 2), Error);
    p.labels = {0, 1};
    g.labels = {0, 5};
    CHECK_THROWS_AS(confusion(p, g, 2, 2), Error);
}

TEST_CASE("confusion accumulation is additive") {
    std::mt19937_64 rng(2);
    ConfusionMatrix sum(3, 4);
    LabelMap all_p(1, 1), all_g(1, 1);
    all_p.labels.clear();
    all_g.labels.clear();
    for (int img = 0; img < 5; ++img) {
        LabelMap p(3, 5), g(3, 5);
        for (auto& v : p.labels) v = static_cast<std::uint32_t>(rng() % 3);
        for (auto& v : g.labels) v = rng() % 7 == 0 ? LabelMap::kIgnore : static_cast<std::uint32_t>(rng() % 4);
        sum += confusion(p, g, 3, 4);
        all_p.labels.insert(all_p.labels.end(), p.labels.begin(), p.labels.end());
        all_g.labels.insert(all_g.labels.end(), g.labels.begin(), g.labels.end());
    }
    all_p.width = all_g.width = static_cast<int>(all_p.labels.size());
    CHECK(confusion(all_p, all_g, 3, 4) == sum);
}

TEST_CASE("majority matching") {
    const auto cm = ConfusionMatrix::from_rows({{1, 9, 0}, {5, 5, 0}, {0, 0, 0}, {0, 2, 3}});
    const Matching m = majority_match(cm);
    CHECK(m.group_to_class == std::vector<int>{1, 0, 0, 2});
    CHECK(m.flagged == std::vector<bool>{false, false, true, false});
    CHECK(matching_objective(cm, m) == 9 + 5 + 0 + 3);
}

TEST_CASE("Hungarian matching examples") {
    const auto diag = ConfusionMatrix::from_rows({{7, 1, 0}, {0, 9, 2}, {1, 0, 4}});
    const Matching d = hungarian_match(diag);
    CHECK(d.group_to_class == std::vector<int>{0, 1, 2});
    CHECK(matching_objective(diag, d) == 20);

    const auto cm = ConfusionMatrix::from_rows({{4, 1, 0}, {2, 0, 3}, {0, 3, 2}});
    const Matching h = hungarian_match(cm);
    CHECK(matching_objective(cm, h) == oracle::best_assignment(cm));
    CHECK(matching_objective(cm, h) == 10);

    const auto wide = ConfusionMatrix::from_rows({{0, 5, 1}, {2, 0, 0}});
    const Matching w = hungarian_match(wide);
    CHECK(w.group_to_class == std::vector<int>{1, 0});

    const auto tall = ConfusionMatrix::from_rows({{1, 0}, {0, 3}, {4, 0}});
    const Matching t = hungarian_match(tall);
    CHECK(t.group_to_class == std::vector<int>{Matching::kUnmatched, 1, 0});
    CHECK_THROWS_AS(hungarian_match(ConfusionMatrix(0, 0)), Error);
}

TEST_CASE("Hungarian matching is optimal on random matrices") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t p = 1 + rng() % 7;
        const std::size_t g = 1 + rng() % 7;
        const ConfusionMatrix cm = random_cm(p, g, rng, trial % 2 ? 1000 : 3);
        const Matching h = hungarian_match(cm);
        CHECK(h.group_to_class.size() == p);
        std::vector<int> used;
        for (int c : h.group_to_class) {
            if (c == Matching::kUnmatched) continue;
            CHECK(c < static_cast<int>(g));
            CHECK(std::find(used.begin(), used.end(), c) == used.end());
            used.push_back(c);
        }
        CHECK(used.size() == std::min(p, g));
        CHECK(matching_objective(cm, h) == oracle::best_assignment(cm));
    }
}

TEST_CASE("Hungarian ties resolve to the lexicographically smallest assignment") {
    CHECK(hungarian_match(ConfusionMatrix::from_rows({{1, 1}, {1, 1}})).group_to_class == std::vector<int>{0, 1});
    CHECK(hungarian_match(ConfusionMatrix(3, 2)).group_to_class ==
          std::vector<int>{0, 1, Matching::kUnmatched});
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t p = 1 + rng() % 5;
        const std::size_t g = 1 + rng() % 5;
        const ConfusionMatrix cm = random_cm(p, g, rng, 2);
        auto maps = optimal_maps(cm);
        // Unmatched sorts after every class.
        auto key = [](std::vector<int> m) {
            for (int& v : m) v = v == Matching::kUnmatched ? 1000 : v;
            return m;
        };
        std::sort(maps.begin(), maps.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
        CHECK(hungarian_match(cm).group_to_class == maps.front());
    }
}

TEST_CASE("metrics golden values") {
    const MetricsReport r = metrics(ClassMatrix::from_rows({{50, 10}, {20, 20}}));
    CHECK(r.miou == doctest::Approx(0.5125).epsilon(1e-12));
    CHECK(r.wiou == doctest::Approx(0.535).epsilon(1e-12));
    CHECK(r.pacc == doctest::Approx(0.7).epsilon(1e-12));
    REQUIRE(r.per_class.size() == 2);
    CHECK(*r.per_class[0].iou == doctest::Approx(0.625));
    CHECK(*r.per_class[1].iou == doctest::Approx(0.4));
    CHECK(r.evaluated_pixels == 100);
}

TEST_CASE("perfect prediction scores one") {
    const auto cm = ConfusionMatrix::from_rows({{0, 30, 0}, {12, 0, 0}, {0, 0, 5}});
    for (const Matching& m : {majority_match(cm), hungarian_match(cm)}) {
        const MetricsReport r = metrics(cm, m);
        CHECK(r.miou == 1.0);
        CHECK(r.wiou == 1.0);
        CHECK(r.pacc == 1.0);
    }
}

TEST_CASE("absent classes are excluded from the mean") {
    const MetricsReport r = metrics(ClassMatrix::from_rows({{10, 0, 0}, {0, 0, 0}, {0, 0, 10}}));
    CHECK_FALSE(r.per_class[1].iou.has_value());
    CHECK(r.miou == 1.0);
    CHECK_THROWS_AS(metrics(ClassMatrix::from_rows({{0, 0}, {0, 0}})), Error);
}

TEST_CASE("unmatched groups count as errors") {
    const auto cm = ConfusionMatrix::from_rows({{10, 0}, {0, 10}, {5, 0}});
    const Matching h = hungarian_match(cm);
    const MetricsReport r = metrics(cm, h);
    CHECK(r.evaluated_pixels == 25);
    CHECK(r.pacc == doctest::Approx(20.0 / 25.0));
    CHECK(*r.per_class[0].iou == doctest::Approx(10.0 / 15.0));
}

TEST_CASE("metrics ignore the naming of classes") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t p = 2 + rng() % 5, g = 2 + rng() % 5;
        const ConfusionMatrix cm = random_cm(p, g, rng, 50);
        if (cm.total() == 0) continue;
        std::vector<int> perm(g);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        ConfusionMatrix moved(p, g);
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = 0; j < g; ++j) moved.at(i, perm[j]) = cm.at(i, j);
        }
        for (const Matching& m : {majority_match(cm), hungarian_match(cm)}) {
            Matching mm = m;
            for (int& c : mm.group_to_class) {
                if (c != Matching::kUnmatched) c = perm[c];
            }
            const MetricsReport a = metrics(cm, m), b = metrics(moved, mm);
            CHECK(a.miou == doctest::Approx(b.miou).epsilon(1e-12));
            CHECK(a.wiou == doctest::Approx(b.wiou).epsilon(1e-12));
            CHECK(a.pacc == doctest::Approx(b.pacc).epsilon(1e-12));
        }
        CHECK(metrics(cm, majority_match(cm)).pacc >= metrics(cm, hungarian_match(cm)).pacc);
    }
}

TEST_CASE("majority diagnostic") {
    const auto diag = ConfusionMatrix::from_rows({{5, 0}, {1, 7}});
    CHECK(majority_diagnostic(diag, hungarian_match(diag)).empty());

    const auto anti = ConfusionMatrix::from_rows({{1, 9}, {9, 1}});
    const Matching a = hungarian_match(anti);
    CHECK(a.group_to_class == std::vector<int>{1, 0});
    CHECK(majority_diagnostic(anti, a).empty());

    const auto cm = ConfusionMatrix::from_rows({{5, 5, 0}, {6, 0, 0}, {0, 0, 1}});
    const Matching h = hungarian_match(cm);
    CHECK(matching_objective(cm, h) == oracle::best_assignment(cm));
    CHECK(h.group_to_class == std::vector<int>{1, 0, 2});
    const auto v = majority_diagnostic(cm, h);
    REQUIRE(v.size() == 1);
    CHECK(v[0].group == 0);
    CHECK(v[0].assigned_class == 1);
    CHECK(v[0].majority_class == 0);
    CHECK(v[0].fraction == doctest::Approx(0.5));
    CHECK_FALSE(format_diagnostic(v).empty());
}

TEST_CASE("report formatting") {
    const MetricsReport r = metrics(ClassMatrix::from_rows({{50, 10}, {20, 20}}));
    const std::string csv = format_csv(r);
    CHECK(csv.find("mIoU,0.5125") != std::string::npos);
    CHECK(csv.find("iou_class_1,0.4") != std::string::npos);
    CHECK(format_table(r).find("mIoU") != std::string::npos);
    CHECK(matching_name(MatchingKind::Hungarian) == "hungarian");
}
