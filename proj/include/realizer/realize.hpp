#pragma once

// Decide whether a pair (f, g) can arise as the nearest/farthest maps of n
// points in some metric space, and build an explicit distance-matrix witness
// by labeling the edges of K_n so that per-vertex label order matches the
// required distance order.

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "realizer/funcgraph.hpp"

namespace realizer {

enum class ViolationKind {
    PointwiseCollision,       // f(i) = g(i), or a fixed point slipped through
    LongCycleF,               // G_f has a cycle of length >= 3
    LongCycleG,
    MultipleComposeFixedPoints,  // f o g fixes more than one vertex
    FixedPointNotSourceInG,   // f(g(i)) = i but something maps to i under g
    PartnerNotSourceInF,      // f(g(i)) = i but something maps to g(i) under f
};

struct Violation {
    ViolationKind kind;
    std::vector<int> vertices;  // 0-based participants
    std::string detail;
};

struct NiceReport {
    bool is_nice = false;
    std::vector<Violation> violations;
};

inline NiceReport check(const FuncPair& p) {
    NiceReport report;
    if (auto cyc = long_cycle(p.f)) {
        report.violations.push_back({ViolationKind::LongCycleF, *cyc,
                                     "G_f has a cycle of length " + std::to_string(cyc->size())});
    }
    if (auto cyc = long_cycle(p.g)) {
        report.violations.push_back({ViolationKind::LongCycleG, *cyc,
                                     "G_g has a cycle of length " + std::to_string(cyc->size())});
    }
    const auto fixed = compose_fixed_points(p);
    if (fixed.size() > 1) {
        report.violations.push_back(
            {ViolationKind::MultipleComposeFixedPoints, fixed,
             "f o g has " + std::to_string(fixed.size()) + " fixed points"});
    }
    for (int i : fixed) {
        for (int u = 0; u < p.n(); ++u) {
            if (p.g(u) == i) {
                report.violations.push_back(
                    {ViolationKind::FixedPointNotSourceInG,
                     {i, u},
                     "vertex " + std::to_string(i + 1) + " is fixed by f o g but g(" +
                         std::to_string(u + 1) + ") = " + std::to_string(i + 1)});
                break;
            }
        }
        const int gi = p.g(i);
        for (int u = 0; u < p.n(); ++u) {
            if (p.f(u) == gi) {
                report.violations.push_back(
                    {ViolationKind::PartnerNotSourceInF,
                     {gi, u},
                     "vertex " + std::to_string(gi + 1) + " = g(fixed point) but f(" +
                         std::to_string(u + 1) + ") = " + std::to_string(gi + 1)});
                break;
            }
        }
    }
    report.is_nice = report.violations.empty();
    return report;
}

// A single function is a nearest map of some point set iff it is a farthest
// map of some point set iff its digraph has no cycle longer than two.
inline bool check_single(const FuncMap& f) { return !long_cycle(f).has_value(); }

// Bijection from the edges of K_n to 1..C(n,2) satisfying, at every vertex j,
// label(j,f(j)) < label(j,r) < label(j,g(j)) for all other r.
struct EdgeLabeling {
    int n = 0;
    std::vector<int> table;  // n*n, 0 on the diagonal

    int label(int i, int j) const { return table[static_cast<std::size_t>(i) * n + j]; }
    int pair_count() const { return n * (n - 1) / 2; }
};

namespace detail {

inline void verify_labeling(const EdgeLabeling& c, const FuncPair& p) {
    for (int j = 0; j < p.n(); ++j) {
        const int cf = c.label(j, p.f(j));
        const int cg = c.label(j, p.g(j));
        for (int r = 0; r < p.n(); ++r) {
            if (r == j) continue;
            if (r != p.f(j) && c.label(j, r) <= cf)
                throw std::logic_error("edge_labeling: min inequality failed at vertex " +
                                       std::to_string(j + 1));
            if (r != p.g(j) && c.label(j, r) >= cg)
                throw std::logic_error("edge_labeling: max inequality failed at vertex " +
                                       std::to_string(j + 1));
        }
    }
}

}  // namespace detail

inline EdgeLabeling edge_labeling(const FuncPair& p) {
    if (!check(p).is_nice) throw std::invalid_argument("edge_labeling: pair is not nice");
    const int n = p.n();
    const int total = n * (n - 1) / 2;

    const auto hf = shadow(p.f);
    const auto hg = shadow(p.g);
    const auto common = common_edge(p);  // at most one on a nice pair

    std::set<std::pair<int, int>> common_set;
    if (common) common_set.insert(EdgeSet::canonical(common->first, common->second));

    // T_f / T_g edges sorted by (level type, canonical pair)
    const auto lf = level_partition(p.f);
    const auto lg = level_partition(p.g);
    auto typed_sorted = [&](const EdgeSet& h, const LevelPartition& lp) {
        std::vector<std::pair<int, std::pair<int, int>>> typed;
        for (const auto& e : h.edges()) {
            if (common_set.count(e)) continue;
            typed.push_back({std::max(lp.level[e.first], lp.level[e.second]), e});
        }
        std::sort(typed.begin(), typed.end());
        std::vector<std::pair<int, int>> out;
        for (auto& [t, e] : typed) out.push_back(e);
        return out;
    };
    const auto tf = typed_sorted(hf, lf);
    const auto tg = typed_sorted(hg, lg);

    EdgeLabeling c;
    c.n = n;
    c.table.assign(static_cast<std::size_t>(n) * n, 0);
    auto set_label = [&](std::pair<int, int> e, int value) {
        c.table[static_cast<std::size_t>(e.first) * n + e.second] = value;
        c.table[static_cast<std::size_t>(e.second) * n + e.first] = value;
    };
    auto labeled = [&](int i, int j) { return c.label(i, j) != 0; };

    for (std::size_t i = 0; i < tf.size(); ++i) set_label(tf[i], static_cast<int>(i) + 1);
    for (std::size_t i = 0; i < tg.size(); ++i) set_label(tg[i], total - static_cast<int>(i));

    if (common) {
        // q is the unique fixed point of f o g; the common edge is {q, g(q)}.
        const int q = common->second;
        const int gq = common->first;
        int next_low = static_cast<int>(tf.size());
        for (int r = 0; r < n; ++r) {
            if (r == q || r == gq || labeled(q, r)) continue;
            set_label({q, r}, ++next_low);
        }
        int next_high = total - static_cast<int>(tg.size()) + 1;
        for (int r = 0; r < n; ++r) {
            if (r == q || r == gq || labeled(gq, r)) continue;
            set_label({gq, r}, --next_high);
        }
    }

    // remaining edges (including the common edge itself) fill the middle gap
    // in canonical pair order
    std::vector<bool> used(total + 1, false);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (labeled(i, j)) used[c.label(i, j)] = true;
    int cursor = 1;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (labeled(i, j)) continue;
            while (used[cursor]) ++cursor;
            used[cursor] = true;
            set_label({i, j}, cursor);
        }
    }

    detail::verify_labeling(c, p);
    return c;
}

class DistanceMatrix {
public:
    explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, 0.0) {
        if (n < 1) throw std::invalid_argument("DistanceMatrix: need n >= 1");
    }

    int n() const { return n_; }
    double operator()(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }
    void set(int i, int j, double v) {
        d_[static_cast<std::size_t>(i) * n_ + j] = v;
        d_[static_cast<std::size_t>(j) * n_ + i] = v;
    }

private:
    int n_;
    std::vector<double> d_;
};

// Witness metric d(i,j) = a_{c(ij)} with a_t = 1 + t/(C(n,2)+1). All values
// sit strictly inside (1, 2), which forces the triangle inequality.
inline DistanceMatrix metric_witness(const FuncPair& p) {
    const auto c = edge_labeling(p);
    const int n = p.n();
    const double scale = 1.0 / (c.pair_count() + 1.0);
    DistanceMatrix d(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d.set(i, j, 1.0 + c.label(i, j) * scale);
    return d;
}

}  // namespace realizer
