#include "segdiscover/eval/matching.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "segdiscover/core/error.hpp"

namespace segdiscover::eval {

namespace {

int plurality_class(const ConfusionMatrix& cm, std::size_t p) {
    int best = 0;
    for (std::size_t g = 1; g < cm.classes(); ++g) {
        if (cm.at(p, g) > cm.at(p, static_cast<std::size_t>(best))) best = static_cast<int>(g);
    }
    return best;
}

// Min-cost perfect assignment on a square integer matrix via shortest
// augmenting paths with potentials. On return, cost[i][j] - u[i] - v[j] >= 0
// everywhere and == 0 on the assignment.
struct Assignment {
    std::vector<std::int64_t> u, v;
    std::vector<std::size_t> col_of, row_of;
};

Assignment solve_assignment(const std::vector<std::int64_t>& cost, std::size_t n) {
    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
    // 1-indexed internally; index 0 is the virtual source.
    std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    std::vector<bool> used(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), kInf);
        std::fill(used.begin(), used.end(), false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            std::int64_t delta = kInf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const std::int64_t cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    Assignment a;
    a.u.assign(u.begin() + 1, u.end());
    a.v.assign(v.begin() + 1, v.end());
    a.col_of.assign(n, 0);
    a.row_of.assign(n, 0);
    for (std::size_t j = 1; j <= n; ++j) {
        a.row_of[j - 1] = p[j] - 1;
        a.col_of[p[j] - 1] = j - 1;
    }
    return a;
}

// Walk rows in order and give each the smallest column it can take in some
// optimal assignment. Every optimal assignment is a perfect matching on the
// zero-reduced-cost edges, so moving row i to column j is possible exactly
// when an alternating path leads from j's current row back to i's column.
void make_lexicographic(const std::vector<std::int64_t>& cost, std::size_t n, Assignment& a) {
    auto tight = [&](std::size_t i, std::size_t j) { return cost[i * n + j] - a.u[i] - a.v[j] == 0; };
    std::vector<bool> locked_col(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (locked_col[j] || !tight(i, j)) continue;
            if (j == a.col_of[i]) break;

            const std::size_t target = a.col_of[i];
            std::vector<std::size_t> came_from(n, n);  // column -> previous column on the path
            std::vector<bool> seen(n, false);
            std::deque<std::size_t> frontier{j};
            seen[j] = true;
            bool found = false;
            while (!frontier.empty() && !found) {
                const std::size_t col = frontier.front();
                frontier.pop_front();
                const std::size_t row = a.row_of[col];
                for (std::size_t c = 0; c < n; ++c) {
                    if (seen[c] || locked_col[c] || !tight(row, c)) continue;
                    seen[c] = true;
                    came_from[c] = col;
                    if (c == target) {
                        found = true;
                        break;
                    }
                    frontier.push_back(c);
                }
            }
            if (!found) continue;

            // Shift each row on the path to the next column, then seat row i at j.
            for (std::size_t c = target; c != j;) {
                const std::size_t prev = came_from[c];
                const std::size_t row = a.row_of[prev];
                a.col_of[row] = c;
                a.row_of[c] = row;
                c = prev;
            }
            a.col_of[i] = j;
            a.row_of[j] = i;
            break;
        }
        locked_col[a.col_of[i]] = true;
    }
}

}  // namespace

Matching majority_match(const ConfusionMatrix& cm) {
    Matching m;
    m.kind = MatchingKind::Majority;
    m.group_to_class.resize(cm.groups());
    m.flagged.assign(cm.groups(), false);
    for (std::size_t p = 0; p < cm.groups(); ++p) {
        if (cm.row_total(p) == 0) {
            m.group_to_class[p] = 0;
            m.flagged[p] = true;
        } else {
            m.group_to_class[p] = plurality_class(cm, p);
        }
    }
    return m;
}

Matching hungarian_match(const ConfusionMatrix& cm) {
    if (cm.groups() < 1 || cm.classes() < 1) throw Error("hungarian_match: empty confusion matrix");
    const std::size_t n = std::max(cm.groups(), cm.classes());
    std::uint64_t mx = 0;
    for (std::size_t p = 0; p < cm.groups(); ++p) {
        for (std::size_t g = 0; g < cm.classes(); ++g) mx = std::max(mx, cm.at(p, g));
    }
    std::vector<std::int64_t> cost(n * n, static_cast<std::int64_t>(mx));
    for (std::size_t p = 0; p < cm.groups(); ++p) {
        for (std::size_t g = 0; g < cm.classes(); ++g) {
            cost[p * n + g] = static_cast<std::int64_t>(mx - cm.at(p, g));
        }
    }
    Assignment a = solve_assignment(cost, n);
    make_lexicographic(cost, n, a);

    Matching m;
    m.kind = MatchingKind::Hungarian;
    m.group_to_class.resize(cm.groups());
    m.flagged.assign(cm.groups(), false);
    for (std::size_t p = 0; p < cm.groups(); ++p) {
        const std::size_t g = a.col_of[p];
        m.group_to_class[p] = g < cm.classes() ? static_cast<int>(g) : Matching::kUnmatched;
    }
    return m;
}

std::uint64_t matching_objective(const ConfusionMatrix& cm, const Matching& match) {
    std::uint64_t s = 0;
    for (std::size_t p = 0; p < cm.groups(); ++p) {
        const int g = match.group_to_class.at(p);
        if (g != Matching::kUnmatched) s += cm.at(p, static_cast<std::size_t>(g));
    }
    return s;
}

std::vector<MajorityViolation> majority_diagnostic(const ConfusionMatrix& cm, const Matching& hungarian) {
    std::vector<MajorityViolation> out;
    for (std::size_t p = 0; p < cm.groups(); ++p) {
        const int g = hungarian.group_to_class.at(p);
        const std::uint64_t total = cm.row_total(p);
        if (g == Matching::kUnmatched || total == 0) continue;
        const std::uint64_t held = cm.at(p, static_cast<std::size_t>(g));
        bool strict = true;
        for (std::size_t other = 0; other < cm.classes(); ++other) {
            if (static_cast<int>(other) != g && cm.at(p, other) >= held) strict = false;
        }
        if (!strict) {
            out.push_back({p, g, plurality_class(cm, p), static_cast<double>(held) / static_cast<double>(total)});
        }
    }
    return out;
}

}  // namespace segdiscover::eval
