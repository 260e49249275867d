#pragma once

// Euclidean witnesses. Two constructions: the always-available R^{n-1}
// embedding that factors a compressed witness metric through its Gram matrix,
// and the R^k spherical-cap construction that places points one by one on
// S^{k-1} with prescribed pairwise angles. Plus the closed-form dimension
// bounds and the named instance families.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "realizer/detail/perturb.hpp"
#include "realizer/detail/rng.hpp"
#include "realizer/funcgraph.hpp"
#include "realizer/realize.hpp"
#include "realizer/spherical.hpp"
#include "realizer/verify.hpp"

namespace realizer {

// Prescribed angles for the edges of the constraint graph H_{f,g}. Edges of
// H_f land just below the right angle, edges of H_g just above, star edges of
// a common-edge endpoint in between, the common edge itself exactly at pi/2.
struct AngleTable {
    int n = 0;
    std::map<std::pair<int, int>, double> alpha;

    bool has(int i, int j) const { return alpha.count(EdgeSet::canonical(i, j)) > 0; }
    double at(int i, int j) const { return alpha.at(EdgeSet::canonical(i, j)); }
};

struct EmbedParams {
    int k = 12;
    std::uint64_t seed = 0;
    double alpha_const = 1.0 / 500.0;
    int max_attempts_per_point = 10000;
    int max_restarts = 20;
    double perturb_scale = 1e-6;

    double delta() const { return std::acos(alpha_const / 2.0); }
};

struct BoundsReport {
    int k = 0;
    std::optional<double> upper_m;   // 1 + 6 sin(pi/12)^{3-k}, defined for k >= 4
    double lower_A = 0.0;
    double lower_c = 0.0;
    double lower_n = 0.0;            // A c^k + 1
    std::optional<double> pack_Bk;   // full area / cap area at arccos(2/3)/2, k >= 2
};

// R^{n-1} witness: compress the metric witness into (1, 1 + 1/(4n^2)) so the
// double-centered Gram matrix stays safely positive semidefinite, then factor
// it. The compression preserves the distance order, so certification carries
// over from the abstract witness.
inline PointConfig simplex(const FuncPair& p) {
    if (!check(p).is_nice) throw std::invalid_argument("simplex: pair is not nice");
    const int n = p.n();
    const auto w = metric_witness(p);

    Eigen::MatrixXd d2(n, n);
    const double squeeze = 1.0 / (4.0 * double(n) * double(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                d2(i, j) = 0.0;
            } else {
                const double v = 1.0 + (w(i, j) - 1.0) * squeeze;
                d2(i, j) = v * v;
            }
        }

    const Eigen::MatrixXd centering =
        Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    const Eigen::MatrixXd gram = -0.5 * centering * d2 * centering;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    if (eig.info() != Eigen::Success) throw std::runtime_error("simplex: eigensolver failed");
    const Eigen::VectorXd evals = eig.eigenvalues();  // ascending
    if (evals(0) < -1e-9)
        throw std::runtime_error("simplex: Gram matrix not positive semidefinite");

    PointConfig c(n, n - 1);
    for (int d = 0; d < n - 1; ++d) {
        const int src = n - 1 - d;  // skip the near-zero eigenvalue, largest first
        const double lambda = std::max(evals(src), 0.0);
        c.coords.col(d) = eig.eigenvectors().col(src) * std::sqrt(lambda);
    }
    const auto cert = certify(c, p);
    if (!cert.ok) throw std::runtime_error("simplex: output failed certification: " + cert.summary());
    return c;
}

inline AngleTable angle_table(const FuncPair& p, double alpha_const = 1.0 / 500.0) {
    if (!check(p).is_nice) throw std::invalid_argument("angle_table: pair is not nice");
    if (!(alpha_const > 0.0 && alpha_const < 1.0 / 200.0))
        throw std::invalid_argument("angle_table: alpha_const outside (0, 1/200)");
    const int n = p.n();
    const auto labels = edge_labeling(p);
    const auto hf = shadow(p.f);
    const auto hg = shadow(p.g);
    const auto h = constraint_graph(p);
    const auto common = common_edge(p);

    // classes in increasing angle: H_f\H_g, star at k2, common, star at k1, H_g\H_f
    enum Class { Tf = 0, StarQ = 1, Common = 2, StarGq = 3, Tg = 4 };
    std::vector<std::vector<std::pair<int, std::pair<int, int>>>> by_class(5);
    for (const auto& e : h.edges()) {
        const bool in_f = hf.contains(e.first, e.second);
        const bool in_g = hg.contains(e.first, e.second);
        Class cls;
        if (in_f && in_g) {
            cls = Common;
        } else if (in_f) {
            cls = Tf;
        } else if (in_g) {
            cls = Tg;
        } else {
            // star closure edge; q = fixed point of f o g gets the low side
            const int q = common->second;
            cls = (e.first == q || e.second == q) ? StarQ : StarGq;
        }
        by_class[cls].push_back({labels.label(e.first, e.second), e});
    }

    const double a = alpha_const;
    const std::pair<double, double> windows[5] = {
        {std::acos(a), std::acos(a / 2.0)},        // cos in (a/2, a)
        {std::acos(a / 2.0), 0.5 * kPi},           // cos in (0, a/2)
        {0.5 * kPi, 0.5 * kPi},                    // exactly pi/2
        {0.5 * kPi, std::acos(-a / 2.0)},          // cos in (-a/2, 0)
        {std::acos(-a / 2.0), std::acos(-a)},      // cos in (-a, -a/2)
    };

    AngleTable table;
    table.n = n;
    for (int cls = 0; cls < 5; ++cls) {
        auto& items = by_class[cls];
        std::sort(items.begin(), items.end());
        const auto [lo, hi] = windows[cls];
        const double width = hi - lo;
        const int m = static_cast<int>(items.size());
        for (int r = 0; r < m; ++r) {
            const double frac = 0.01 + 0.98 * (r + 1.0) / (m + 1.0);
            table.alpha[items[r].second] = (cls == Common) ? 0.5 * kPi : lo + width * frac;
        }
    }
    return table;
}

// Order in which the construction places points: every vertex sees at most 7
// earlier constraint-graph neighbors (H_{f,g} is a union of four forests, so
// a minimum-degree elimination always finds a vertex of degree <= 7).
inline std::vector<int> elimination_order(const FuncPair& p) {
    if (!check(p).is_nice) throw std::invalid_argument("elimination_order: pair is not nice");
    const int n = p.n();
    const auto h = constraint_graph(p);
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    std::vector<int> degree(n, 0);
    for (const auto& [a, b] : h.edges()) {
        adj[a][b] = adj[b][a] = 1;
        ++degree[a];
        ++degree[b];
    }
    std::vector<char> removed(n, 0);
    std::vector<int> order(n);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (removed[v]) continue;
            if (best < 0 || degree[v] < degree[best]) best = v;
        }
        if (degree[best] > 7)
            throw std::logic_error("elimination_order: no vertex of degree <= 7 remains");
        removed[best] = 1;
        order[n - 1 - step] = best;
        for (int u = 0; u < n; ++u)
            if (!removed[u] && adj[best][u]) --degree[u];
    }
    return order;
}

// Re-jitter a configuration whose strict nearest/farthest inequalities hold
// with positive margin until all pairwise distances are distinct too.
inline PointConfig perturb_distinct(const PointConfig& c, const FuncPair& p, double scale,
                                    std::uint64_t seed = 0) {
    if (c.n != p.n()) throw std::invalid_argument("perturb_distinct: size mismatch");
    return detail::perturb_until_distinct(
        c, [&p](const PointConfig& cfg) { return detail::pair_margin(cfg, p); }, scale, seed);
}

// The S^{k-1} construction: place points in elimination order, pinning exact
// angles to earlier constraint neighbors (boundary-cap intersection) while
// keeping every other earlier point in the near-orthogonal band
// (delta, pi - delta). Sampling exhaustion is a legal absent outcome.
inline std::optional<PointConfig> spherical_embed(const FuncPair& p, const EmbedParams& params) {
    if (!check(p).is_nice) throw std::invalid_argument("spherical_embed: pair is not nice");
    if (params.k < 9) throw std::invalid_argument("spherical_embed: need k >= 9");
    if (!(params.alpha_const > 0.0 && params.alpha_const < 1.0 / 200.0))
        throw std::invalid_argument("spherical_embed: alpha_const outside (0, 1/200)");

    const int n = p.n();
    const int k = params.k;
    const auto h = constraint_graph(p);
    const auto order = elimination_order(p);
    const auto angles = angle_table(p, params.alpha_const);
    const double delta = params.delta();

    for (int restart = 0; restart < params.max_restarts; ++restart) {
        const std::uint64_t restart_seed = detail::derive_seed(params.seed, restart);
        Eigen::MatrixXd points(n, k);
        bool failed = false;

        for (int idx = 0; idx < n && !failed; ++idx) {
            const int v = order[idx];
            std::vector<SphereCap> constraints;
            std::vector<SphereCap> forbidden;
            for (int jdx = 0; jdx < idx; ++jdx) {
                const int u = order[jdx];
                const Eigen::VectorXd base = points.row(u);
                if (h.contains(u, v)) {
                    constraints.emplace_back(base, angles.at(u, v));
                } else {
                    forbidden.emplace_back(base, delta);
                    forbidden.emplace_back(-base, delta);
                }
            }
            if (constraints.size() > 7)
                throw std::logic_error("spherical_embed: more than 7 earlier neighbors");
            const BoundarySphere sphere = constraints.empty()
                                              ? BoundarySphere::whole_sphere(k)
                                              : boundary_intersection(constraints, k);
            const auto pt = sample_on(sphere, forbidden, detail::derive_seed(restart_seed, idx),
                                      params.max_attempts_per_point);
            if (!pt) {
                failed = true;
                break;
            }
            points.row(v) = *pt;
        }
        if (failed) continue;

        PointConfig c(n, k);
        c.coords = points;
        if (!(detail::pair_margin(c, p) > 0.0)) continue;  // should not happen
        PointConfig result = perturb_distinct(c, p, params.perturb_scale,
                                              detail::derive_seed(restart_seed, 0x9e3779b9ULL));
        if (certify(result, p).ok) return result;
    }
    return std::nullopt;
}

inline double ball_bound(int k, double r) {
    if (k < 1 || !(r > 1.0)) throw std::invalid_argument("ball_bound: need k >= 1, r > 1");
    return std::pow(2.0 * r + 1.0, k);
}

inline BoundsReport bounds(int k) {
    if (k < 1) throw std::invalid_argument("bounds: need k >= 1");
    BoundsReport rep;
    rep.k = k;

    if (k >= 4) {
        const double eps = std::sin(kPi / 12.0);
        rep.upper_m = 1.0 + 6.0 * std::pow(eps, 3.0 - k);
    }

    const double alpha = 1.0 / 500.0;
    const double beta = std::acos((alpha - 128.0 * alpha * alpha) / 2.0);
    const double mid = 0.5 * (0.5 * kPi + beta);
    rep.lower_c = std::sin(mid) / std::sin(beta);
    rep.lower_A = (0.5 * kPi - beta) * std::pow(std::sin(beta), 10) /
                  (2.0 * beta * std::pow(std::sin(mid), 10));
    rep.lower_n = rep.lower_A * std::pow(rep.lower_c, k) + 1.0;

    if (k >= 2) {
        const double pack_angle = std::acos(2.0 / 3.0) / 2.0;
        rep.pack_Bk = full_sphere_area(k - 1) / cap_area(k - 1, pack_angle);
    }
    return rep;
}

// -- named instances ---------------------------------------------------------

// The 6-point pair that is realizable abstractly but not in the plane.
inline FuncPair make_croft6() {
    return FuncPair(FuncMap::from_one_based({6, 6, 6, 6, 6, 1}),
                    FuncMap::from_one_based({2, 1, 1, 1, 1, 2}));
}

// The n-point pair from the dimension upper bound: everything nearest to n.
inline FuncPair make_star(int n) {
    if (n < 3) throw std::invalid_argument("make_star: need n >= 3");
    std::vector<int> f(n), g(n);
    for (int i = 1; i <= n; ++i) {
        f[i - 1] = (i < n) ? n : 1;
        g[i - 1] = (i == 1 || i == n) ? 2 : 1;
    }
    return FuncPair(FuncMap::from_one_based(f), FuncMap::from_one_based(g));
}

// Complete upward binary tree of depth s (children point at parents, heap
// indexing) plus one auxiliary vertex forming a 2-cycle with the root, so the
// map is total and fixed-point-free on 2^{s+1} vertices.
inline FuncMap make_btree(int s) {
    if (s < 1) throw std::invalid_argument("make_btree: need s >= 1");
    const int tree = (1 << (s + 1)) - 1;
    const int aux = tree + 1;
    std::vector<int> f(aux);
    f[0] = aux;   // root -> auxiliary
    f[aux - 1] = 1;  // auxiliary -> root
    for (int v = 2; v <= tree; ++v) f[v - 1] = v / 2;
    return FuncMap::from_one_based(f);
}

// Two fixed points of f o g; the canonical non-realizable 4-point pair.
inline FuncPair make_twofix4() {
    return FuncPair(FuncMap::from_one_based({2, 1, 1, 2}),
                    FuncMap::from_one_based({3, 4, 4, 3}));
}

}  // namespace realizer
