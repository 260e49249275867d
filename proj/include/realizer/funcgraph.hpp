#pragma once

// Fixed-point-free functions on [n] viewed as functional digraphs (out-degree
// one), and the undirected graphs derived from them. Vertices are 0-based in
// memory; file formats and the CLI speak 1-based.

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace realizer {

class FuncMap {
public:
    explicit FuncMap(std::vector<int> image) : image_(std::move(image)) {
        const int n = static_cast<int>(image_.size());
        if (n < 3) throw std::invalid_argument("FuncMap: need n >= 3");
        for (int i = 0; i < n; ++i) {
            if (image_[i] < 0 || image_[i] >= n)
                throw std::invalid_argument("FuncMap: image out of range at vertex " +
                                            std::to_string(i + 1));
            if (image_[i] == i)
                throw std::invalid_argument("FuncMap: fixed point at vertex " +
                                            std::to_string(i + 1));
        }
    }

    static FuncMap from_one_based(const std::vector<int>& image) {
        std::vector<int> shifted(image.size());
        for (std::size_t i = 0; i < image.size(); ++i) shifted[i] = image[i] - 1;
        return FuncMap(std::move(shifted));
    }

    int n() const { return static_cast<int>(image_.size()); }
    int operator()(int i) const { return image_[i]; }
    const std::vector<int>& image() const { return image_; }

    std::vector<int> to_one_based() const {
        std::vector<int> out(image_.size());
        for (std::size_t i = 0; i < image_.size(); ++i) out[i] = image_[i] + 1;
        return out;
    }

    friend bool operator==(const FuncMap& a, const FuncMap& b) { return a.image_ == b.image_; }

private:
    std::vector<int> image_;
};

struct FuncPair {
    FuncMap f;
    FuncMap g;

    FuncPair(FuncMap f_, FuncMap g_) : f(std::move(f_)), g(std::move(g_)) {
        if (f.n() != g.n()) throw std::invalid_argument("FuncPair: size mismatch");
        for (int i = 0; i < f.n(); ++i) {
            if (f(i) == g(i))
                throw std::invalid_argument("FuncPair: f and g collide at vertex " +
                                            std::to_string(i + 1));
        }
    }

    int n() const { return f.n(); }

    friend bool operator==(const FuncPair& a, const FuncPair& b) {
        return a.f == b.f && a.g == b.g;
    }
};

// Lemma-3 style decomposition: level 0 is the 2-cycle core, every edge of G_f
// descends exactly one level (or stays inside level 0).
struct LevelPartition {
    int max_level = 0;
    std::vector<int> level;
};

class EdgeSet {
public:
    explicit EdgeSet(int n) : n_(n) {}

    static std::pair<int, int> canonical(int i, int j) {
        return i < j ? std::pair<int, int>{i, j} : std::pair<int, int>{j, i};
    }

    void insert(int i, int j) {
        if (i == j) throw std::invalid_argument("EdgeSet: self loop");
        if (i < 0 || j < 0 || i >= n_ || j >= n_)
            throw std::invalid_argument("EdgeSet: vertex out of range");
        edges_.insert(canonical(i, j));
    }

    bool contains(int i, int j) const { return edges_.count(canonical(i, j)) > 0; }
    std::size_t size() const { return edges_.size(); }
    int n() const { return n_; }
    const std::set<std::pair<int, int>>& edges() const { return edges_; }

    std::vector<int> neighbors(int v) const {
        std::vector<int> out;
        for (const auto& [a, b] : edges_) {
            if (a == v) out.push_back(b);
            else if (b == v) out.push_back(a);
        }
        return out;
    }

    friend bool operator==(const EdgeSet& a, const EdgeSet& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    int n_;
    std::set<std::pair<int, int>> edges_;
};

// Some directed cycle of G_f of length >= 3, if one exists. The returned
// vertices satisfy f(c[i]) == c[i+1 mod len].
inline std::optional<std::vector<int>> long_cycle(const FuncMap& f) {
    const int n = f.n();
    // 0 unvisited, 1 on current walk, 2 settled
    std::vector<int> state(n, 0);
    std::vector<int> pos_in_path(n, -1);
    for (int start = 0; start < n; ++start) {
        if (state[start] != 0) continue;
        std::vector<int> path;
        int v = start;
        while (state[v] == 0) {
            state[v] = 1;
            pos_in_path[v] = static_cast<int>(path.size());
            path.push_back(v);
            v = f(v);
        }
        if (state[v] == 1) {
            const int first = pos_in_path[v];
            const int len = static_cast<int>(path.size()) - first;
            if (len >= 3) {
                return std::vector<int>(path.begin() + first, path.end());
            }
        }
        for (int u : path) {
            state[u] = 2;
            pos_in_path[u] = -1;
        }
    }
    return std::nullopt;
}

inline LevelPartition level_partition(const FuncMap& f) {
    if (long_cycle(f))
        throw std::invalid_argument("level_partition: G_f has a cycle of length >= 3");
    const int n = f.n();
    LevelPartition part;
    part.level.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        if (f(f(i)) == i) part.level[i] = 0;
    }
    for (int i = 0; i < n; ++i) {
        if (part.level[i] >= 0) continue;
        // walk down to the first settled vertex, then backfill
        std::vector<int> chain;
        int v = i;
        while (part.level[v] < 0) {
            chain.push_back(v);
            v = f(v);
        }
        int lvl = part.level[v];
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) part.level[*it] = ++lvl;
    }
    part.max_level = *std::max_element(part.level.begin(), part.level.end());
    return part;
}

// H_f: edge ij iff f(i) = j or f(j) = i.
inline EdgeSet shadow(const FuncMap& f) {
    EdgeSet h(f.n());
    for (int i = 0; i < f.n(); ++i) h.insert(i, f(i));
    return h;
}

// All ordered pairs (k1, k2) with f(k1) = k2 and g(k2) = k1. Each one is a
// common edge of H_f and H_g, and k2 is then a fixed point of f o g.
inline std::vector<std::pair<int, int>> common_edges(const FuncPair& p) {
    std::vector<std::pair<int, int>> found;
    for (int k1 = 0; k1 < p.n(); ++k1) {
        const int k2 = p.f(k1);
        if (p.g(k2) == k1) found.emplace_back(k1, k2);
    }
    return found;
}

// The unique common edge of a nice pair, as (k1, k2). On a pair with several
// common edges this throws and the message lists them all (diagnostic mode).
inline std::optional<std::pair<int, int>> common_edge(const FuncPair& p) {
    auto found = common_edges(p);
    if (found.empty()) return std::nullopt;
    if (found.size() > 1) {
        std::string msg = "common_edge: pair is not nice, common edges:";
        for (const auto& [a, b] : found)
            msg += " (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
        throw std::runtime_error(msg);
    }
    return found.front();
}

inline std::vector<int> compose_fixed_points(const FuncPair& p) {
    std::vector<int> out;
    for (int i = 0; i < p.n(); ++i)
        if (p.f(p.g(i)) == i) out.push_back(i);
    return out;
}

inline std::vector<int> sources(const FuncMap& f) {
    std::vector<bool> hit(f.n(), false);
    for (int i = 0; i < f.n(); ++i) hit[f(i)] = true;
    std::vector<int> out;
    for (int v = 0; v < f.n(); ++v)
        if (!hit[v]) out.push_back(v);
    return out;
}

// H_{f,g}: the union of the shadows, closed under stars at the endpoints of a
// common edge when one exists.
inline EdgeSet constraint_graph(const FuncPair& p) {
    EdgeSet h(p.n());
    for (int i = 0; i < p.n(); ++i) {
        h.insert(i, p.f(i));
        h.insert(i, p.g(i));
    }
    for (const auto& [k1, k2] : common_edges(p)) {
        for (int v = 0; v < p.n(); ++v) {
            if (v != k1) h.insert(v, k1);
            if (v != k2) h.insert(v, k2);
        }
    }
    return h;
}

}  // namespace realizer
