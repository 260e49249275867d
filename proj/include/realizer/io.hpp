#pragma once

// Flat-file formats. Everything on disk is 1-based JSON:
//   instance: {"n": int, "f": [int...], "g": [int...]?, "metadata": {...}?}
//   points:   {"n": int, "k": int, "points": [[float...]...], "seed": string}
//   matrix:   {"n": int, "d": [[float...]...]}
// Result files additionally carry "version" and "timing_ms"; readers ignore
// the extras.

#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "realizer/funcgraph.hpp"
#include "realizer/realize.hpp"
#include "realizer/verify.hpp"
#include "realizer/version.hpp"

namespace realizer {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Instance {
    int n = 0;
    std::vector<int> f;                 // 1-based images
    std::optional<std::vector<int>> g;  // 1-based images
    std::map<std::string, std::string> metadata;

    bool is_pair() const { return g.has_value(); }
};

namespace io_detail {

inline nlohmann::json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(path + ": " + e.what());
    }
}

inline std::vector<int> int_array(const nlohmann::json& j, const std::string& key, int n) {
    if (!j.contains(key) || !j[key].is_array())
        throw IoError("field '" + key + "' missing or not an array");
    std::vector<int> out;
    for (const auto& v : j[key]) {
        if (!v.is_number_integer()) throw IoError("field '" + key + "' has a non-integer entry");
        out.push_back(v.get<int>());
    }
    if (static_cast<int>(out.size()) != n)
        throw IoError("field '" + key + "' has length " + std::to_string(out.size()) +
                      ", expected " + std::to_string(n));
    return out;
}

}  // namespace io_detail

inline Instance read_instance(const std::string& path) {
    const auto j = io_detail::parse_file(path);
    if (!j.is_object()) throw IoError(path + ": top level must be an object");
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw IoError(path + ": field 'n' missing or not an integer");
    Instance inst;
    inst.n = j["n"].get<int>();
    if (inst.n < 3) throw IoError(path + ": need n >= 3");
    inst.f = io_detail::int_array(j, "f", inst.n);
    if (j.contains("g")) inst.g = io_detail::int_array(j, "g", inst.n);
    if (j.contains("metadata")) {
        if (!j["metadata"].is_object()) throw IoError(path + ": metadata must be an object");
        for (const auto& [key, value] : j["metadata"].items())
            inst.metadata[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
    return inst;
}

inline void write_instance(const std::string& path, const Instance& inst) {
    nlohmann::json j;
    j["n"] = inst.n;
    j["f"] = inst.f;
    if (inst.g) j["g"] = *inst.g;
    if (!inst.metadata.empty()) j["metadata"] = inst.metadata;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << "\n";
}

// Structural validation of the raw arrays, reported instead of thrown so the
// CLI can print every problem at once.
inline std::vector<std::string> validate_instance(const Instance& inst) {
    std::vector<std::string> problems;
    auto check_array = [&](const std::vector<int>& img, const std::string& name) {
        for (int i = 0; i < inst.n; ++i) {
            if (img[i] < 1 || img[i] > inst.n)
                problems.push_back(name + "(" + std::to_string(i + 1) + ") out of range");
            else if (img[i] == i + 1)
                problems.push_back(name + " has a fixed point at " + std::to_string(i + 1));
        }
    };
    check_array(inst.f, "f");
    if (inst.g) {
        check_array(*inst.g, "g");
        for (int i = 0; i < inst.n; ++i)
            if (inst.f[i] == (*inst.g)[i] && inst.f[i] >= 1 && inst.f[i] <= inst.n)
                problems.push_back("f and g collide at vertex " + std::to_string(i + 1));
    }
    return problems;
}

inline FuncMap to_funcmap(const Instance& inst) { return FuncMap::from_one_based(inst.f); }

inline FuncPair to_funcpair(const Instance& inst) {
    if (!inst.g) throw IoError("instance has no g array");
    return FuncPair(FuncMap::from_one_based(inst.f), FuncMap::from_one_based(*inst.g));
}

inline void write_points(const std::string& path, const PointConfig& c, const std::string& seed,
                         double timing_ms) {
    nlohmann::json j;
    j["n"] = c.n;
    j["k"] = c.k;
    std::vector<std::vector<double>> rows(c.n, std::vector<double>(c.k));
    for (int i = 0; i < c.n; ++i)
        for (int d = 0; d < c.k; ++d) rows[i][d] = c.coords(i, d);
    j["points"] = rows;
    j["seed"] = seed;
    j["version"] = kVersion;
    j["timing_ms"] = timing_ms;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << "\n";
}

inline PointConfig read_points(const std::string& path) {
    const auto j = io_detail::parse_file(path);
    if (!j.contains("n") || !j.contains("k") || !j.contains("points"))
        throw IoError(path + ": points file needs fields n, k, points");
    const int n = j["n"].get<int>();
    const int k = j["k"].get<int>();
    if (n < 1 || k < 1) throw IoError(path + ": bad dimensions");
    PointConfig c(n, k);
    const auto& pts = j["points"];
    if (!pts.is_array() || static_cast<int>(pts.size()) != n)
        throw IoError(path + ": points array must have n rows");
    for (int i = 0; i < n; ++i) {
        if (!pts[i].is_array() || static_cast<int>(pts[i].size()) != k)
            throw IoError(path + ": point row " + std::to_string(i + 1) + " must have k entries");
        for (int d = 0; d < k; ++d) c.coords(i, d) = pts[i][d].get<double>();
    }
    return c;
}

inline void write_matrix(const std::string& path, const DistanceMatrix& d, double timing_ms) {
    nlohmann::json j;
    j["n"] = d.n();
    std::vector<std::vector<double>> rows(d.n(), std::vector<double>(d.n()));
    for (int i = 0; i < d.n(); ++i)
        for (int k = 0; k < d.n(); ++k) rows[i][k] = d(i, k);
    j["d"] = rows;
    j["version"] = kVersion;
    j["timing_ms"] = timing_ms;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << "\n";
}

inline DistanceMatrix read_matrix(const std::string& path) {
    const auto j = io_detail::parse_file(path);
    if (!j.contains("n") || !j.contains("d")) throw IoError(path + ": matrix file needs n and d");
    const int n = j["n"].get<int>();
    if (n < 1) throw IoError(path + ": bad n");
    DistanceMatrix d(n);
    const auto& rows = j["d"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw IoError(path + ": d must have n rows");
    for (int i = 0; i < n; ++i) {
        if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
            throw IoError(path + ": d row " + std::to_string(i + 1) + " must have n entries");
        for (int k = i; k < n; ++k) d.set(i, k, rows[i][k].get<double>());
    }
    return d;
}

}  // namespace realizer
