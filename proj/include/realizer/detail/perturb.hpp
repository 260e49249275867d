#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "realizer/detail/rng.hpp"
#include "realizer/verify.hpp"

namespace realizer::detail {

inline bool all_distances_distinct(const PointConfig& c) {
    return extract_maps(distances(c)).distinct;
}

// Strict minimum over the inequalities a pair realization must satisfy:
// d(i, f(i)) below everything else in row i, d(i, g(i)) above.
inline double pair_margin(const PointConfig& c, const FuncPair& p) {
    const auto d = distances(c);
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < c.n; ++i) {
        for (int j = 0; j < c.n; ++j) {
            if (j == i) continue;
            if (j != p.f(i)) margin = std::min(margin, d(i, j) - d(i, p.f(i)));
            if (j != p.g(i)) margin = std::min(margin, d(i, p.g(i)) - d(i, j));
        }
    }
    return margin;
}

inline double farthest_margin(const PointConfig& c, const FuncMap& g) {
    const auto d = distances(c);
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < c.n; ++i) {
        for (int j = 0; j < c.n; ++j) {
            if (j == i || j == g(i)) continue;
            margin = std::min(margin, d(i, g(i)) - d(i, j));
        }
    }
    return margin;
}

// Jitter the points until every pairwise distance is distinct while no
// required strict inequality flips. margin_of must return the smallest gap
// among the required inequalities (<= 0 means violated); the noise amplitude
// is tied to the input's margin so a single jitter cannot cross it.
template <typename MarginFn>
PointConfig perturb_until_distinct(const PointConfig& input, const MarginFn& margin_of,
                                   double scale, std::uint64_t seed) {
    const double margin = margin_of(input);
    if (!(margin > 0.0))
        throw std::invalid_argument("perturb: a required inequality is tied or violated");
    auto rng = make_engine(seed);
    double cur_scale = scale;
    for (int halving = 0; halving <= 40; ++halving, cur_scale *= 0.5) {
        const double half_width = cur_scale * margin / (2.0 * std::sqrt(double(input.k)));
        std::uniform_real_distribution<double> noise(-half_width, half_width);
        PointConfig cand = input;
        for (int i = 0; i < cand.n; ++i)
            for (int d = 0; d < cand.k; ++d) cand.coords(i, d) += noise(rng);
        if (margin_of(cand) > 0.0 && all_distances_distinct(cand)) return cand;
    }
    throw std::runtime_error("perturb: failed to separate distances within 40 halvings");
}

}  // namespace realizer::detail
