// Command-line front end. Subcommands map onto the library one-to-one:
//   check    decide realizability of an instance (pair or single function)
//   witness  write the abstract metric witness for a nice pair
//   embed    write Euclidean coordinates (simplex or spherical construction)
//   maxreal  realize a single function as a farthest map in the plane
//   verify   certify a points file against an instance
//   oracle   exhaustive ordering search for n <= 5
//   bounds   dimension-bound constants for a given k
//   family   write a named instance
//
// Exit codes: 0 success/realizable, 2 definitively not realizable,
// 3 construction budget exhausted, 1 usage or format errors.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "realizer/embed.hpp"
#include "realizer/io.hpp"
#include "realizer/log.hpp"
#include "realizer/maxreal2d.hpp"
#include "realizer/verify.hpp"
#include "realizer/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotRealizable = 2;
constexpr int kExitBudget = 3;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void print_violations(const realizer::NiceReport& report) {
    for (const auto& v : report.violations) std::cout << "  violation: " << v.detail << "\n";
}

// Loads and structurally validates an instance; returns nullopt after
// printing the problems (exit 1 path).
std::optional<realizer::Instance> load_instance(const std::string& path) {
    const auto inst = realizer::read_instance(path);
    const auto problems = realizer::validate_instance(inst);
    if (!problems.empty()) {
        std::cout << "invalid instance " << path << ":\n";
        for (const auto& p : problems) std::cout << "  " << p << "\n";
        return std::nullopt;
    }
    return inst;
}

int cmd_check(const std::string& path) {
    const auto inst = load_instance(path);
    if (!inst) return kExitUsage;
    if (inst->is_pair()) {
        const auto report = realizer::check(realizer::to_funcpair(*inst));
        if (report.is_nice) {
            std::cout << "realizable: the pair is nice\n";
            return kExitOk;
        }
        std::cout << "not realizable:\n";
        print_violations(report);
        return kExitNotRealizable;
    }
    const auto f = realizer::to_funcmap(*inst);
    if (realizer::check_single(f)) {
        std::cout << "realizable: no cycles of length > 2 (min- and max-realizable)\n";
        return kExitOk;
    }
    const auto cyc = realizer::long_cycle(f);
    std::cout << "not realizable: G_f has a cycle of length " << cyc->size() << "\n";
    return kExitNotRealizable;
}

int cmd_witness(const std::string& path, const std::string& out) {
    const auto start = Clock::now();
    const auto inst = load_instance(path);
    if (!inst) return kExitUsage;
    const auto pair = realizer::to_funcpair(*inst);
    const auto report = realizer::check(pair);
    if (!report.is_nice) {
        std::cout << "not realizable, no witness written:\n";
        print_violations(report);
        return kExitNotRealizable;
    }
    const auto d = realizer::metric_witness(pair);
    const auto maps = realizer::extract_maps(d);
    if (!(maps.distinct && maps.nearest == pair.f.image() && maps.farthest == pair.g.image())) {
        std::cout << "internal error: witness failed self-certification\n";
        return kExitUsage;
    }
    realizer::write_matrix(out, d, ms_since(start));
    std::cout << "witness written to " << out << "\n";
    return kExitOk;
}

int cmd_embed(const std::string& path, const std::string& mode, int k, const std::string& seed,
              int max_attempts, int max_restarts, const std::string& out) {
    const auto start = Clock::now();
    const auto inst = load_instance(path);
    if (!inst) return kExitUsage;
    const auto pair = realizer::to_funcpair(*inst);
    const auto report = realizer::check(pair);
    if (!report.is_nice) {
        std::cout << "not realizable, no embedding written:\n";
        print_violations(report);
        return kExitNotRealizable;
    }

    realizer::PointConfig result;
    if (mode == "simplex") {
        if (k != 0 && k < pair.n() - 1) {
            std::cout << "simplex mode writes n-1 coordinates; need --k >= " << pair.n() - 1
                      << "\n";
            return kExitUsage;
        }
        result = realizer::simplex(pair);
    } else if (mode == "spherical") {
        realizer::EmbedParams params;
        if (k == 0) {
            std::cout << "spherical mode requires --k\n";
            return kExitUsage;
        }
        params.k = k;
        params.seed = realizer::detail::seed_from_string(seed);
        params.max_attempts_per_point = max_attempts;
        params.max_restarts = max_restarts;
        if (params.k < 9) {
            std::cout << "spherical construction needs k >= 9\n";
            return kExitUsage;
        }
        const auto embedded = realizer::spherical_embed(pair, params);
        if (!embedded) {
            std::cout << "sampling budget exhausted (" << max_restarts << " restarts x "
                      << max_attempts << " attempts); no embedding found\n";
            return kExitBudget;
        }
        result = *embedded;
    } else {
        std::cout << "unknown mode '" << mode << "' (use simplex or spherical)\n";
        return kExitUsage;
    }

    const auto cert = realizer::certify(result, pair);
    if (!cert.ok) {
        std::cout << "internal error: embedding failed certification: " << cert.summary() << "\n";
        return kExitUsage;
    }
    realizer::write_points(out, result, seed, ms_since(start));
    std::cout << "embedding written to " << out << " (n=" << result.n << ", k=" << result.k
              << ")\n";
    return kExitOk;
}

int cmd_maxreal(const std::string& path, const std::string& seed, const std::string& out) {
    const auto start = Clock::now();
    const auto inst = load_instance(path);
    if (!inst) return kExitUsage;
    if (inst->is_pair()) {
        std::cout << "maxreal expects a single-function instance (no g array)\n";
        return kExitUsage;
    }
    const auto f = realizer::to_funcmap(*inst);
    if (!realizer::check_single(f)) {
        std::cout << "not max-realizable: G_f has a cycle of length > 2\n";
        return kExitNotRealizable;
    }
    realizer::PointConfig result;
    try {
        result = realizer::max_realize(f, realizer::detail::seed_from_string(seed));
    } catch (const std::runtime_error& e) {
        std::cout << "construction budget exhausted: " << e.what() << "\n";
        return kExitBudget;
    }
    const auto cert = realizer::certify_farthest(result, f);
    if (!cert.ok) {
        std::cout << "internal error: construction failed certification: " << cert.summary()
                  << "\n";
        return kExitUsage;
    }
    realizer::write_points(out, result, seed, ms_since(start));
    std::cout << "farthest-map realization written to " << out << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& points_path, const std::string& instance_path,
               const std::string& mode) {
    const auto inst = load_instance(instance_path);
    if (!inst) return kExitUsage;
    const auto points = realizer::read_points(points_path);

    realizer::CertifyReport cert;
    if (inst->is_pair()) {
        cert = realizer::certify(points, realizer::to_funcpair(*inst));
    } else if (mode == "farthest") {
        cert = realizer::certify_farthest(points, realizer::to_funcmap(*inst));
    } else if (mode == "nearest") {
        const auto f = realizer::to_funcmap(*inst);
        const auto maps = realizer::extract_maps(realizer::distances(points));
        cert.distinct = maps.distinct;
        for (int i = 0; i < points.n; ++i)
            if (maps.nearest[i] != f(i)) cert.nearest_mismatches.push_back(i);
        cert.ok = cert.distinct && cert.nearest_mismatches.empty();
    } else {
        std::cout << "unknown mode '" << mode << "' (use nearest or farthest)\n";
        return kExitUsage;
    }
    std::cout << cert.summary() << "\n";
    return cert.ok ? kExitOk : kExitNotRealizable;
}

int cmd_oracle(const std::string& path) {
    const auto inst = load_instance(path);
    if (!inst) return kExitUsage;
    if (inst->n > 5) {
        std::cout << "oracle is exhaustive and only supports n <= 5\n";
        return kExitUsage;
    }
    if (inst->is_pair()) {
        const bool ok = realizer::oracle(realizer::to_funcpair(*inst));
        std::cout << (ok ? "realizable" : "not realizable")
                  << " (exhaustive order enumeration)\n";
        return ok ? kExitOk : kExitNotRealizable;
    }
    const auto f = realizer::to_funcmap(*inst);
    const bool as_min = realizer::oracle_single(f, realizer::MapMode::Nearest);
    const bool as_max = realizer::oracle_single(f, realizer::MapMode::Farthest);
    std::cout << "min-realizable: " << (as_min ? "yes" : "no")
              << ", max-realizable: " << (as_max ? "yes" : "no") << "\n";
    return (as_min && as_max) ? kExitOk : kExitNotRealizable;
}

int cmd_bounds(int k) {
    const auto rep = realizer::bounds(k);
    std::cout << "k = " << rep.k << "\n";
    if (rep.upper_m) {
        std::cout << "upper_m = " << *rep.upper_m << "  (every realizable pair on up to "
                  << static_cast<long long>(*rep.upper_m) << " points fits in R^" << k << ")\n";
    } else {
        std::cout << "upper_m: defined for k >= 4\n";
    }
    std::cout << "lower_A = " << rep.lower_A << "\n";
    std::cout << "lower_c = " << rep.lower_c << "\n";
    std::cout << "lower_n = " << rep.lower_n << "  (guarantee A c^k + 1; vacuous at desk scale)\n";
    if (rep.pack_Bk) std::cout << "pack_Bk = " << *rep.pack_Bk << "\n";
    return kExitOk;
}

int cmd_family(const std::string& name, int param, const std::string& out) {
    realizer::Instance inst;
    if (name == "croft6") {
        const auto p = realizer::make_croft6();
        inst.n = p.n();
        inst.f = p.f.to_one_based();
        inst.g = p.g.to_one_based();
    } else if (name == "star") {
        if (param < 3) {
            std::cout << "family star needs a size parameter >= 3\n";
            return kExitUsage;
        }
        const auto p = realizer::make_star(param);
        inst.n = p.n();
        inst.f = p.f.to_one_based();
        inst.g = p.g.to_one_based();
    } else if (name == "btree") {
        if (param < 1) {
            std::cout << "family btree needs a depth parameter >= 1\n";
            return kExitUsage;
        }
        const auto f = realizer::make_btree(param);
        inst.n = f.n();
        inst.f = f.to_one_based();
    } else if (name == "twofix4") {
        const auto p = realizer::make_twofix4();
        inst.n = p.n();
        inst.f = p.f.to_one_based();
        inst.g = p.g.to_one_based();
    } else {
        std::cout << "unknown family '" << name
                  << "' (use croft6, star, btree, twofix4)\n";
        return kExitUsage;
    }
    inst.metadata["family"] = name;
    realizer::write_instance(out, inst);
    std::cout << "instance written to " << out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"realizer: nearest/farthest neighbor map realizability"};
    app.set_version_flag("--version", realizer::kVersion);
    app.require_subcommand(1);

    std::string path, out, points_path;
    std::string seed = "0";
    std::string mode = "simplex";
    std::string verify_mode = "farthest";
    std::string family_name;
    int k = 0;
    int family_param = 0;
    int max_attempts = 10000;
    int max_restarts = 20;

    auto* check = app.add_subcommand("check", "decide realizability");
    check->add_option("instance", path)->required();

    auto* witness = app.add_subcommand("witness", "write a metric witness");
    witness->add_option("instance", path)->required();
    witness->add_option("--out", out)->required();

    auto* embed = app.add_subcommand("embed", "write Euclidean coordinates");
    embed->add_option("instance", path)->required();
    embed->add_option("--mode", mode)->check(CLI::IsMember({"simplex", "spherical"}));
    embed->add_option("--k", k);
    embed->add_option("--seed", seed);
    embed->add_option("--max-attempts", max_attempts);
    embed->add_option("--max-restarts", max_restarts);
    embed->add_option("--out", out)->required();

    auto* maxreal = app.add_subcommand("maxreal", "realize a farthest map in the plane");
    maxreal->add_option("instance", path)->required();
    maxreal->add_option("--seed", seed);
    maxreal->add_option("--out", out)->required();

    auto* verify = app.add_subcommand("verify", "certify points against an instance");
    verify->add_option("points", points_path)->required();
    verify->add_option("instance", path)->required();
    verify->add_option("--mode", verify_mode)->check(CLI::IsMember({"nearest", "farthest"}));

    auto* oracle = app.add_subcommand("oracle", "exhaustive check for n <= 5");
    oracle->add_option("instance", path)->required();

    auto* bounds = app.add_subcommand("bounds", "dimension-bound constants");
    bounds->add_option("k", k)->required();

    auto* family = app.add_subcommand("family", "write a named instance");
    family->add_option("name", family_name)->required();
    family->add_option("param", family_param);
    family->add_option("--out", out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitUsage : kExitOk;
    }

    try {
        if (check->parsed()) return cmd_check(path);
        if (witness->parsed()) return cmd_witness(path, out);
        if (embed->parsed())
            return cmd_embed(path, mode, k, seed, max_attempts, max_restarts, out);
        if (maxreal->parsed()) return cmd_maxreal(path, seed, out);
        if (verify->parsed()) return cmd_verify(points_path, path, verify_mode);
        if (oracle->parsed()) return cmd_oracle(path);
        if (bounds->parsed()) return cmd_bounds(k);
        if (family->parsed()) return cmd_family(family_name, family_param, out);
    } catch (const realizer::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
