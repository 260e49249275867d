#pragma once

// Realize any function whose digraph has no long cycles as the farthest-point
// map of points in the plane. One connected component of the shadow graph is
// built on the ellipse x^2 + 4y^2 = 4: the 2-cycle sits at (+-2, 0), level-i
// vertices cluster at parameter b_i with b_{i-1} = m_{b_i}, and each child is
// placed at the exact farthest-preimage of its image plus a tiny offset.
// Components are then mounted on distinct diameters of the unit circle.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "realizer/detail/perturb.hpp"
#include "realizer/detail/rng.hpp"
#include "realizer/funcgraph.hpp"
#include "realizer/realize.hpp"
#include "realizer/verify.hpp"

namespace realizer {

// Squared distance from P_b = (-2 sqrt(1-b^2), -b) to Q_y = (2 sqrt(1-y^2), y).
inline double g_b(double b, double y) {
    if (!(b > 0.0 && b < 1.0 / 3.0)) throw std::invalid_argument("g_b: b outside (0, 1/3)");
    if (!(y > 0.0 && y < 1.0)) throw std::invalid_argument("g_b: y outside (0, 1)");
    const double sy = std::sqrt(1.0 - y * y);
    const double sb = std::sqrt(1.0 - b * b);
    return 4.0 * (sy + sb) * (sy + sb) + (y + b) * (y + b);
}

inline double g_b_derivative(double b, double y) {
    return -6.0 * y - 8.0 * y * std::sqrt(1.0 - b * b) / std::sqrt(1.0 - y * y) + 2.0 * b;
}

// The unique maximizer m_b of g_b on (0, 1): the root of
//   (3y - b)^2 (1 - y^2) / y^2 = 16 (1 - b^2)
// on (0, b/3), where the left side is strictly decreasing. The tolerance
// scales with b so the solve stays meaningful for the very small parameters
// produced by deep level chains.
inline double solve_mb(double b) {
    if (!(b > 0.0 && b < 1.0 / 3.0)) throw std::invalid_argument("solve_mb: b outside (0, 1/3)");
    const double target = 16.0 * (1.0 - b * b);
    auto h = [b](double y) {
        const double u = 3.0 * y - b;
        return u * u * (1.0 - y * y) / (y * y);
    };
    double lo = b * 1e-9;  // h(lo) ~ 1e18, far above the target
    double hi = b / 3.0;
    const double tol = std::min(1e-12, b * 1e-13);
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (h(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double root = 0.5 * (lo + hi);
    if (std::abs(g_b_derivative(b, root)) > 1e-8)
        throw std::logic_error("solve_mb: stationarity check failed");
    return root;
}

// Inverse of b -> m_b (strictly increasing): the parameter whose farthest
// point sits at Q_{y_target}.
inline double farthest_param_inverse(double y_target) {
    if (!(y_target > 0.0)) throw std::invalid_argument("farthest_param_inverse: need y > 0");
    const double b_max = 1.0 / 3.0 - 1e-12;
    if (y_target >= solve_mb(b_max))
        throw std::invalid_argument("farthest_param_inverse: target above sup of m_b");
    // m_b < b/3, so b = 3*y_target brackets from below
    double lo = 3.0 * y_target;
    if (lo >= b_max) throw std::invalid_argument("farthest_param_inverse: target above range");
    double hi = b_max;
    while (hi - lo > lo * 1e-14) {
        const double mid = 0.5 * (lo + hi);
        if (solve_mb(mid) < y_target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace maxreal_detail {

enum class Quadrant { UpperRight, LowerLeft, UpperLeft, LowerRight };

inline Eigen::Vector2d ellipse_point(Quadrant q, double t) {
    const double x = 2.0 * std::sqrt(1.0 - t * t);
    switch (q) {
        case Quadrant::UpperRight: return {x, t};
        case Quadrant::LowerLeft: return {-x, -t};
        case Quadrant::UpperLeft: return {-x, t};
        case Quadrant::LowerRight: return {x, -t};
    }
    return {0.0, 0.0};
}

// Side A uses Q (odd levels) / P (even levels); side B the mirror pair.
inline Quadrant quadrant_for(bool side_a, int level) {
    const bool odd = (level % 2) == 1;
    if (side_a) return odd ? Quadrant::UpperRight : Quadrant::LowerLeft;
    return odd ? Quadrant::UpperLeft : Quadrant::LowerRight;
}

}  // namespace maxreal_detail

// Static layout data for one shadow component: its 2-cycle, the side split,
// and the back-chained cluster parameters b_m > ... > b_1.
struct ComponentPlan {
    std::vector<int> vertices;
    int a0 = -1;
    int b0 = -1;
    int max_level = 0;
    std::vector<char> side_a;     // indexed like vertices
    std::vector<double> b_chain;  // b_chain[i] is the level-(i+1) parameter
    double eps_canonical = 0.0;
};

inline ComponentPlan plan_component(const FuncMap& g, const std::vector<int>& comp,
                                    double eps_canonical) {
    if (!(eps_canonical > 0.0)) throw std::invalid_argument("plan_component: eps must be > 0");
    const auto levels = level_partition(g);  // rejects long cycles
    ComponentPlan plan;
    plan.vertices = comp;
    plan.eps_canonical = eps_canonical;

    std::vector<int> core;
    for (int v : comp)
        if (levels.level[v] == 0) core.push_back(v);
    if (core.size() != 2)
        throw std::invalid_argument("plan_component: component must contain exactly one 2-cycle");
    plan.a0 = std::min(core[0], core[1]);
    plan.b0 = std::max(core[0], core[1]);
    if (g(plan.a0) != plan.b0 || g(plan.b0) != plan.a0)
        throw std::invalid_argument("plan_component: core vertices do not form a 2-cycle");

    plan.side_a.assign(comp.size(), 0);
    for (std::size_t idx = 0; idx < comp.size(); ++idx) {
        int v = comp[idx];
        while (v != plan.a0 && v != plan.b0) v = g(v);
        plan.side_a[idx] = (v == plan.a0) ? 1 : 0;
        plan.max_level = std::max(plan.max_level, levels.level[comp[idx]]);
    }

    if (plan.max_level > 0) {
        // largest b with P_b inside the eps ball around (-2, 0), capped below 1/3
        auto anchor_dist = [](double b) {
            const double dx = 2.0 - 2.0 * std::sqrt(1.0 - b * b);
            return std::hypot(dx, b);
        };
        const double b_cap = 1.0 / 3.0 - 1e-9;
        const double target = 0.9 * eps_canonical;
        double b_top = b_cap;
        if (anchor_dist(b_cap) > target) {
            double lo = 0.0, hi = b_cap;
            while (hi - lo > 1e-15) {
                const double mid = 0.5 * (lo + hi);
                if (anchor_dist(mid) < target) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            b_top = lo;
            if (!(b_top > 0.0))
                throw std::invalid_argument("plan_component: eps too small for the ellipse layout");
        }
        plan.b_chain.assign(plan.max_level, 0.0);
        plan.b_chain[plan.max_level - 1] = b_top;
        for (int i = plan.max_level - 1; i >= 1; --i)
            plan.b_chain[i - 1] = solve_mb(plan.b_chain[i]);
    }
    return plan;
}

namespace maxreal_detail {

struct PlacementResult {
    std::map<int, Eigen::Vector2d> points;  // canonical-frame coordinates
    bool certified = false;
};

// One placement pass at a given relative cluster spread. Children sharing a
// target are separated by offsets bounded by an eighth of the target
// cluster's smallest relative gap, which keeps each child's preferred
// farthest point on its own image. The two sides carry independent gap
// budgets: opposite-side competitors lose against a vertex's own target by a
// fixed quadratic margin whatever their parameters, so only same-side gaps
// constrain the offsets.
inline PlacementResult place_component(const FuncMap& g, const ComponentPlan& plan,
                                       double spread, std::uint64_t seed) {
    const auto levels = level_partition(g);
    PlacementResult out;
    out.points[plan.a0] = Eigen::Vector2d(-2.0, 0.0);
    out.points[plan.b0] = Eigen::Vector2d(2.0, 0.0);

    auto rng_state = seed;
    const double jitter = 1.0 + 0.05 * (double(detail::splitmix64(rng_state) >> 11) /
                                            double(1ULL << 53) - 0.5);

    // per-vertex ellipse parameter, by increasing level; side B's level-1
    // cluster is shifted off side A's so the two sides never mirror each
    // other exactly
    double side_spread[2] = {spread * jitter, spread * jitter};
    const double side_one_shift[2] = {1.0, 1.0 + 0.4 * spread * jitter};
    std::map<int, double> param;
    for (int lvl = 1; lvl <= plan.max_level; ++lvl) {
        for (int side = 0; side < 2; ++side) {
            const bool side_a = (side == 0);
            const double level_spread = side_spread[side];
            // members of this level and side, grouped by their image
            std::map<int, std::vector<int>> groups;
            for (std::size_t idx = 0; idx < plan.vertices.size(); ++idx) {
                const int v = plan.vertices[idx];
                if (levels.level[v] != lvl || (plan.side_a[idx] != 0) != side_a) continue;
                groups[g(v)].push_back(v);
            }
            for (auto& [target, members] : groups) {
                std::sort(members.begin(), members.end());
                const double base = (lvl == 1)
                                        ? plan.b_chain[0] * side_one_shift[side]
                                        : farthest_param_inverse(param.at(target));
                const int w = static_cast<int>(members.size());
                for (int r = 0; r < w; ++r) {
                    const double offset = (2.0 * (r + 1) - w - 1.0) / (w + 1.0);
                    param[members[r]] = base * (1.0 + level_spread * offset);
                }
            }
            // the next level's offsets on this side must not cross the
            // midpoints between the parameters just placed
            std::vector<double> placed;
            for (std::size_t idx = 0; idx < plan.vertices.size(); ++idx) {
                const int v = plan.vertices[idx];
                if (levels.level[v] == lvl && (plan.side_a[idx] != 0) == side_a)
                    placed.push_back(param.at(v));
            }
            std::sort(placed.begin(), placed.end());
            double min_rel_gap = 2.0;
            for (std::size_t i = 1; i < placed.size(); ++i)
                min_rel_gap = std::min(min_rel_gap, (placed[i] - placed[i - 1]) / placed[i]);
            side_spread[side] =
                placed.size() > 1 ? min_rel_gap / 8.0 : side_spread[side] / 8.0;
        }
    }

    for (std::size_t idx = 0; idx < plan.vertices.size(); ++idx) {
        const int v = plan.vertices[idx];
        const int lvl = levels.level[v];
        if (lvl == 0) continue;
        out.points[v] = ellipse_point(quadrant_for(plan.side_a[idx] != 0, lvl), param.at(v));
    }

    // fragment certification: farthest within the component, strict margins,
    // and the locality bound
    for (std::size_t idx = 0; idx < plan.vertices.size(); ++idx) {
        const int v = plan.vertices[idx];
        const Eigen::Vector2d& pv = out.points.at(v);
        const double to_target = (pv - out.points.at(g(v))).norm();
        for (int u : plan.vertices) {
            if (u == v || u == g(v)) continue;
            if (!((pv - out.points.at(u)).norm() < to_target)) return out;
        }
        const double to_anchor = std::min((pv - Eigen::Vector2d(-2.0, 0.0)).norm(),
                                          (pv - Eigen::Vector2d(2.0, 0.0)).norm());
        if (to_anchor > plan.eps_canonical) return out;
    }
    out.certified = true;
    return out;
}

}  // namespace maxreal_detail

// Points for one component, all within eps of anchor A or anchor B in the
// target frame, whose within-fragment farthest map equals g. The cluster
// spread shrinks geometrically until the fragment certifies.
inline std::map<int, Eigen::Vector2d> realize_component(const FuncMap& g,
                                                        const std::vector<int>& comp,
                                                        const Eigen::Vector2d& anchor_a,
                                                        const Eigen::Vector2d& anchor_b,
                                                        double eps, std::uint64_t seed) {
    const double anchor_gap = (anchor_b - anchor_a).norm();
    if (!(anchor_gap > 0.0)) throw std::invalid_argument("realize_component: anchors coincide");
    if (!(eps > 0.0)) throw std::invalid_argument("realize_component: eps must be > 0");
    const double scale = anchor_gap / 4.0;
    const auto plan = plan_component(g, comp, eps / scale);

    maxreal_detail::PlacementResult placed;
    double spread = 0.25;
    for (int shrink = 0; shrink <= 40 && !placed.certified; ++shrink, spread *= 0.5)
        placed = maxreal_detail::place_component(g, plan, spread, seed);
    if (!placed.certified)
        throw std::runtime_error("realize_component: spread shrink budget exhausted "
                                 "(level chain too deep for double precision)");

    // similarity mapping (-2,0) -> A and (2,0) -> B
    const Eigen::Vector2d u = (anchor_b - anchor_a) / 4.0;
    const Eigen::Vector2d u_perp(-u.y(), u.x());
    std::map<int, Eigen::Vector2d> out;
    for (const auto& [v, pt] : placed.points) {
        const Eigen::Vector2d rel = pt - Eigen::Vector2d(-2.0, 0.0);
        out[v] = anchor_a + rel.x() * u + rel.y() * u_perp;
    }
    return out;
}

// Farthest-map realization in the plane: components of the shadow graph are
// laid out on distinct diameters of the unit circle, with a shared eps shrunk
// until cross-component distances cannot beat any own-diameter relation.
inline PointConfig max_realize(const FuncMap& g, std::uint64_t seed = 0) {
    if (!check_single(g))
        throw std::invalid_argument("max_realize: G_g has a cycle of length >= 3");
    const int n = g.n();

    // connected components of the shadow graph
    const auto h = shadow(g);
    std::vector<int> comp_of(n, -1);
    std::vector<std::vector<int>> comps;
    for (int start = 0; start < n; ++start) {
        if (comp_of[start] >= 0) continue;
        const int id = static_cast<int>(comps.size());
        comps.push_back({});
        std::vector<int> stack{start};
        comp_of[start] = id;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            comps[id].push_back(v);
            for (int u : h.neighbors(v)) {
                if (comp_of[u] < 0) {
                    comp_of[u] = id;
                    stack.push_back(u);
                }
            }
        }
        std::sort(comps[id].begin(), comps[id].end());
    }

    const int s = static_cast<int>(comps.size());
    double eps = 1.0 / (8.0 * s);
    for (int shrink = 0; shrink <= 40; ++shrink, eps *= 0.5) {
        PointConfig c(n, 2);
        for (int i = 0; i < s; ++i) {
            const double theta = i * std::numbers::pi / s + std::numbers::pi / (4.0 * s);
            const Eigen::Vector2d a(std::cos(theta), std::sin(theta));
            const auto fragment =
                realize_component(g, comps[i], a, -a, eps, detail::derive_seed(seed, i));
            for (const auto& [v, pt] : fragment) c.coords.row(v) = pt;
        }
        if (!(detail::farthest_margin(c, g) > 0.0)) continue;
        // a quarter of the margin: cluster congruences across sides and
        // components produce exactly repeated distances, and the jitter must
        // clear the rounding granularity of distances near the diameter
        PointConfig result = detail::perturb_until_distinct(
            c, [&g](const PointConfig& cfg) { return detail::farthest_margin(cfg, g); }, 0.25,
            detail::derive_seed(seed, 0x5bd1e995ULL));
        if (certify_farthest(result, g).ok) return result;
    }
    throw std::runtime_error("max_realize: eps shrink budget exhausted");
}

}  // namespace realizer
