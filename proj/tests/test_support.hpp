#pragma once

// Shared test utilities: 1-based constructors mirroring the notation used in
// the worked examples, and randomized instance generators. Functions without
// long cycles are built as in-forests hanging off a set of 2-cycles, which is
// exactly the class they characterize.

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "realizer/funcgraph.hpp"
#include "realizer/realize.hpp"

namespace testsupport {

inline realizer::FuncMap fm(const std::vector<int>& one_based) {
    return realizer::FuncMap::from_one_based(one_based);
}

inline realizer::FuncPair fp(const std::vector<int>& f, const std::vector<int>& g) {
    return realizer::FuncPair(fm(f), fm(g));
}

// Random fixed-point-free map whose digraph has no cycle longer than two:
// some 2-cycles plus every other vertex attached to an earlier one. depth_cap
// bounds the level of attached vertices when positive.
inline realizer::FuncMap random_no_long_cycle(std::mt19937_64& rng, int n, int depth_cap = 0) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    const int max_cycles = n / 2;
    std::uniform_int_distribution<int> pick_cycles(1, max_cycles);
    const int cycles = pick_cycles(rng);

    std::vector<int> image(n, -1);
    std::vector<int> level(n, 0);
    std::vector<int> anchored;
    for (int c = 0; c < cycles; ++c) {
        const int a = order[2 * c], b = order[2 * c + 1];
        image[a] = b;
        image[b] = a;
        anchored.push_back(a);
        anchored.push_back(b);
    }
    for (int idx = 2 * cycles; idx < n; ++idx) {
        const int v = order[idx];
        int parent;
        do {
            parent = anchored[std::uniform_int_distribution<int>(
                0, static_cast<int>(anchored.size()) - 1)(rng)];
        } while (depth_cap > 0 && level[parent] >= depth_cap);
        image[v] = parent;
        level[v] = level[parent] + 1;
        anchored.push_back(v);
    }
    return realizer::FuncMap(image);
}

// Rejection-samples a nice pair: both maps free of long cycles, pointwise
// distinct, and passing the fixed-point/source conditions.
inline realizer::FuncPair random_nice_pair(std::mt19937_64& rng, int n) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const auto f = random_no_long_cycle(rng, n);

        // build g the same way but avoiding g(i) = f(i)
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        const int cycles = std::uniform_int_distribution<int>(1, n / 2)(rng);
        std::vector<int> image(n, -1);
        bool ok = true;
        for (int c = 0; c < cycles && ok; ++c) {
            const int a = order[2 * c], b = order[2 * c + 1];
            if (f(a) == b || f(b) == a) ok = false;
            image[a] = b;
            image[b] = a;
        }
        if (!ok) continue;
        std::vector<int> anchored(order.begin(), order.begin() + 2 * cycles);
        for (int idx = 2 * cycles; idx < n && ok; ++idx) {
            const int v = order[idx];
            int parent = -1;
            for (int tries = 0; tries < 64; ++tries) {
                const int cand = anchored[std::uniform_int_distribution<int>(
                    0, static_cast<int>(anchored.size()) - 1)(rng)];
                if (cand != f(v)) {
                    parent = cand;
                    break;
                }
            }
            if (parent < 0) {
                ok = false;
                break;
            }
            image[v] = parent;
            anchored.push_back(v);
        }
        if (!ok) continue;

        realizer::FuncPair pair(f, realizer::FuncMap(image));
        if (realizer::check(pair).is_nice) return pair;
    }
    throw std::runtime_error("random_nice_pair: rejection budget exhausted");
}

// Random max-realizable function: 1..max_components shadow components, each a
// 2-cycle with an in-forest of bounded depth attached.
inline realizer::FuncMap random_max_realizable(std::mt19937_64& rng, int n, int max_components,
                                               int depth_cap) {
    const int s = std::uniform_int_distribution<int>(1, std::min(max_components, n / 2))(rng);
    std::vector<int> sizes(s, 2);
    for (int extra = 0; extra < n - 2 * s; ++extra)
        ++sizes[std::uniform_int_distribution<int>(0, s - 1)(rng)];

    std::vector<int> labels(n);
    std::iota(labels.begin(), labels.end(), 0);
    std::shuffle(labels.begin(), labels.end(), rng);

    std::vector<int> image(n, -1);
    std::vector<int> level(n, 0);
    int next = 0;
    for (int comp = 0; comp < s; ++comp) {
        const int a = labels[next], b = labels[next + 1];
        image[a] = b;
        image[b] = a;
        std::vector<int> members{a, b};
        for (int j = 2; j < sizes[comp]; ++j) {
            const int v = labels[next + j];
            int parent;
            do {
                parent = members[std::uniform_int_distribution<int>(
                    0, static_cast<int>(members.size()) - 1)(rng)];
            } while (level[parent] >= depth_cap);
            image[v] = parent;
            level[v] = level[parent] + 1;
            members.push_back(v);
        }
        next += sizes[comp];
    }
    return realizer::FuncMap(image);
}

}  // namespace testsupport
