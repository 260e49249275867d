#pragma once

// Ground truth: read nearest/farthest maps off a distance matrix or a point
// set, validate metric axioms, and decide realizability of tiny instances by
// exhausting distance orderings. Comparisons are exact; no epsilon masking.

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "realizer/funcgraph.hpp"
#include "realizer/realize.hpp"

namespace realizer {

struct PointConfig {
    int n = 0;
    int k = 0;
    Eigen::MatrixXd coords;  // n rows, k columns

    PointConfig() = default;
    PointConfig(int n_, int k_) : n(n_), k(k_), coords(Eigen::MatrixXd::Zero(n_, k_)) {}

    bool points_distinct() const {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if ((coords.row(i) - coords.row(j)).squaredNorm() == 0.0) return false;
        return true;
    }
};

struct MapsResult {
    std::vector<int> nearest;
    std::vector<int> farthest;
    bool distinct = false;  // all off-diagonal distances pairwise distinct
};

inline MapsResult extract_maps(const DistanceMatrix& d) {
    const int n = d.n();
    if (n < 3) throw std::invalid_argument("extract_maps: need n >= 3");
    MapsResult r;
    r.nearest.assign(n, -1);
    r.farthest.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            if (r.nearest[i] < 0 || d(i, j) < d(i, r.nearest[i])) r.nearest[i] = j;
            if (r.farthest[i] < 0 || d(i, j) > d(i, r.farthest[i])) r.farthest[i] = j;
        }
    }
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) values.push_back(d(i, j));
    std::sort(values.begin(), values.end());
    r.distinct = std::adjacent_find(values.begin(), values.end()) == values.end();
    return r;
}

inline bool is_metric(const DistanceMatrix& d) {
    const int n = d.n();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!(d(i, j) > 0.0)) return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            for (int r = 0; r < n; ++r) {
                if (r == i || r == j) continue;
                if (d(i, j) + d(j, r) < d(i, r)) return false;
            }
        }
    return true;
}

inline DistanceMatrix distances(const PointConfig& c) {
    DistanceMatrix d(c.n);
    for (int i = 0; i < c.n; ++i)
        for (int j = i + 1; j < c.n; ++j)
            d.set(i, j, (c.coords.row(i) - c.coords.row(j)).norm());
    return d;
}

struct CertifyReport {
    bool ok = false;
    bool distinct = false;
    std::vector<int> nearest_mismatches;   // vertices where argmin != f
    std::vector<int> farthest_mismatches;  // vertices where argmax != g

    std::string summary() const {
        if (ok) return "certified";
        std::ostringstream os;
        os << "not certified:";
        if (!distinct) os << " distances not all distinct;";
        for (int v : nearest_mismatches) os << " nearest(" << v + 1 << ") != f(" << v + 1 << ");";
        for (int v : farthest_mismatches) os << " farthest(" << v + 1 << ") != g(" << v + 1 << ");";
        return os.str();
    }
};

namespace detail {

inline CertifyReport certify_impl(const PointConfig& c, const std::vector<int>* f_img,
                                  const std::vector<int>* g_img) {
    CertifyReport rep;
    const auto maps = extract_maps(distances(c));
    rep.distinct = maps.distinct;
    if (f_img) {
        for (int i = 0; i < c.n; ++i)
            if (maps.nearest[i] != (*f_img)[i]) rep.nearest_mismatches.push_back(i);
    }
    if (g_img) {
        for (int i = 0; i < c.n; ++i)
            if (maps.farthest[i] != (*g_img)[i]) rep.farthest_mismatches.push_back(i);
    }
    rep.ok = rep.distinct && rep.nearest_mismatches.empty() && rep.farthest_mismatches.empty();
    return rep;
}

}  // namespace detail

inline CertifyReport certify(const PointConfig& c, const FuncPair& p) {
    if (c.n != p.n()) throw std::invalid_argument("certify: point count mismatch");
    return detail::certify_impl(c, &p.f.image(), &p.g.image());
}

// Farthest-map-only certification, for constructions that realize a single
// function as the farthest map.
inline CertifyReport certify_farthest(const PointConfig& c, const FuncMap& g) {
    if (c.n != g.n()) throw std::invalid_argument("certify_farthest: point count mismatch");
    return detail::certify_impl(c, nullptr, &g.image());
}

enum class MapMode { Nearest, Farthest };

namespace detail {

// Backtracking over total orders of the C(n,2) vertex pairs, smallest first.
// Appending edge e is legal iff (when min constraints are on) every endpoint's
// f-edge is already placed or is e itself, and (when max constraints are on)
// e is an endpoint's g-edge only once every other edge there is placed.
struct OrderSearch {
    int n;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> min_edge;  // per vertex, index into edges or -1
    std::vector<int> max_edge;
    std::vector<std::vector<int>> at_vertex;  // edge indices incident to v

    OrderSearch(int n_, const std::vector<int>* f, const std::vector<int>* g)
        : n(n_), min_edge(n_, -1), max_edge(n_, -1), at_vertex(n_) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const int idx = static_cast<int>(edges.size());
                edges.push_back({i, j});
                at_vertex[i].push_back(idx);
                at_vertex[j].push_back(idx);
            }
        auto edge_index = [&](int a, int b) {
            if (a > b) std::swap(a, b);
            // index of {a,b} in lexicographic enumeration
            return a * (2 * n - a - 1) / 2 + (b - a - 1);
        };
        for (int v = 0; v < n; ++v) {
            if (f) min_edge[v] = edge_index(v, (*f)[v]);
            if (g) max_edge[v] = edge_index(v, (*g)[v]);
        }
    }

    bool run() const {
        std::vector<bool> used(edges.size(), false);
        std::vector<int> placed_at(n, 0);
        return extend(used, placed_at, 0);
    }

    bool admissible(const std::vector<bool>& used, const std::vector<int>& placed_at,
                    int e) const {
        for (int v : {edges[e].first, edges[e].second}) {
            if (min_edge[v] >= 0 && e != min_edge[v] && !used[min_edge[v]]) return false;
            if (max_edge[v] >= 0 && e == max_edge[v] && placed_at[v] != n - 2) return false;
        }
        return true;
    }

    bool extend(std::vector<bool>& used, std::vector<int>& placed_at, std::size_t depth) const {
        if (depth == edges.size()) return true;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (used[e] || !admissible(used, placed_at, static_cast<int>(e))) continue;
            used[e] = true;
            ++placed_at[edges[e].first];
            ++placed_at[edges[e].second];
            if (extend(used, placed_at, depth + 1)) return true;
            used[e] = false;
            --placed_at[edges[e].first];
            --placed_at[edges[e].second];
        }
        return false;
    }

    // Full factorial sweep, no pruning; feasible for n <= 4 and used as the
    // self-check against the pruned search.
    bool run_exhaustive() const {
        std::vector<int> perm(edges.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            if (order_valid(perm)) return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    }

    bool order_valid(const std::vector<int>& perm) const {
        // rank[e] = position of edge e in the order, smallest distance first
        std::vector<int> rank(edges.size());
        for (std::size_t pos = 0; pos < perm.size(); ++pos) rank[perm[pos]] = static_cast<int>(pos);
        for (int v = 0; v < n; ++v) {
            for (int e : at_vertex[v]) {
                if (min_edge[v] >= 0 && e != min_edge[v] && rank[e] <= rank[min_edge[v]])
                    return false;
                if (max_edge[v] >= 0 && e != max_edge[v] && rank[e] >= rank[max_edge[v]])
                    return false;
            }
        }
        return true;
    }
};

inline void require_oracle_size(int n) {
    if (n < 3 || n > 5)
        throw std::invalid_argument("oracle: only n in [3,5] is enumerable");
}

inline bool oracle_exhaustive(const FuncPair& p) {
    if (p.n() > 4) throw std::invalid_argument("oracle_exhaustive: only n <= 4");
    return OrderSearch(p.n(), &p.f.image(), &p.g.image()).run_exhaustive();
}

inline bool oracle_single_exhaustive(const FuncMap& f, MapMode mode) {
    if (f.n() > 4) throw std::invalid_argument("oracle_single_exhaustive: only n <= 4");
    OrderSearch s(f.n(), mode == MapMode::Nearest ? &f.image() : nullptr,
                  mode == MapMode::Farthest ? &f.image() : nullptr);
    return s.run_exhaustive();
}

}  // namespace detail

// True iff some total order of the pairs realizes f as every row's minimum and
// g as every row's maximum; order existence is equivalent to realizability
// because any order can be metrized by values packed just above 1.
inline bool oracle(const FuncPair& p) {
    detail::require_oracle_size(p.n());
    return detail::OrderSearch(p.n(), &p.f.image(), &p.g.image()).run();
}

inline bool oracle_single(const FuncMap& f, MapMode mode) {
    detail::require_oracle_size(f.n());
    detail::OrderSearch s(f.n(), mode == MapMode::Nearest ? &f.image() : nullptr,
                          mode == MapMode::Farthest ? &f.image() : nullptr);
    return s.run();
}

}  // namespace realizer
