#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "realizer/maxreal2d.hpp"
#include "test_support.hpp"

using namespace realizer;
using testsupport::fm;

namespace {

// Independent oracle: maximize g_b over a fine y grid with one refinement.
double grid_argmax(double b) {
    double best_y = 1e-6, best = -1.0;
    for (double y = 1e-6; y < 0.5; y += 1e-4) {
        const double v = g_b(b, y);
        if (v > best) {
            best = v;
            best_y = y;
        }
    }
    for (double y = std::max(1e-9, best_y - 2e-4); y < best_y + 2e-4; y += 1e-8) {
        const double v = g_b(b, y);
        if (v > best) {
            best = v;
            best_y = y;
        }
    }
    return best_y;
}

Eigen::Vector2d pb(double b) { return {-2.0 * std::sqrt(1.0 - b * b), -b}; }
Eigen::Vector2d qy(double y) { return {2.0 * std::sqrt(1.0 - y * y), y}; }

}  // namespace

TEST_CASE("g_b: displayed formula and coordinate consistency") {
    CHECK(g_b(0.3, 0.3) == Catch::Approx(14.92).margin(1e-12));

    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> bdist(1e-3, 1.0 / 3.0 - 1e-3);
    std::uniform_real_distribution<double> ydist(1e-3, 0.999);
    for (int trial = 0; trial < 200; ++trial) {
        const double b = bdist(rng), y = ydist(rng);
        CHECK(g_b(b, y) == Catch::Approx((pb(b) - qy(y)).squaredNorm()).margin(1e-12));
    }

    // continuity down to the y -> 0 limit
    const double b = 0.2;
    const double limit = 4.0 * std::pow(1.0 + std::sqrt(1.0 - b * b), 2) + b * b;
    CHECK(g_b(b, 1e-9) == Catch::Approx(limit).margin(1e-6));

    CHECK_THROWS_AS(g_b(0.4, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(g_b(0.1, 1.1), std::invalid_argument);
}

TEST_CASE("solve_mb: spot value against the grid oracle") {
    const double m = solve_mb(0.3);
    CHECK(std::abs(m - grid_argmax(0.3)) < 1e-7);
    CHECK(m == Catch::Approx(0.043997).margin(1e-5));
    CHECK(std::abs(g_b_derivative(0.3, m)) < 1e-8);
}

TEST_CASE("solve_mb: root below b/3, monotone in b") {
    double prev = 0.0;
    for (double b = 0.01; b < 1.0 / 3.0 - 1e-6; b += 0.01) {
        const double m = solve_mb(b);
        REQUIRE(m > 0.0);
        REQUIRE(m < b / 3.0);
        REQUIRE(m > prev);
        prev = m;
    }
}

TEST_CASE("solve_mb: maximality over sampled y") {
    std::mt19937_64 rng(62);
    std::uniform_real_distribution<double> ydist(1e-6, 1.0 - 1e-6);
    for (double b : {0.05, 0.15, 0.25, 0.32}) {
        const double m = solve_mb(b);
        const double peak = g_b(b, m);
        for (int trial = 0; trial < 500; ++trial) {
            const double y = ydist(rng);
            if (std::abs(y - m) < 1e-9) continue;
            REQUIRE(g_b(b, y) < peak);
        }
    }
}

TEST_CASE("solve_mb stays meaningful for very small parameters") {
    for (double b : {1e-4, 1e-8, 1e-12}) {
        const double m = solve_mb(b);
        CHECK(m > 0.0);
        CHECK(m < b / 3.0);
        // small-b asymptotics: the root approaches b/7
        CHECK(m == Catch::Approx(b / 7.0).epsilon(1e-2));
    }
}

TEST_CASE("farthest_param_inverse round-trips") {
    for (double b : {0.1, 0.3, 0.01}) {
        const double m = solve_mb(b);
        CHECK(farthest_param_inverse(m) == Catch::Approx(b).margin(1e-9));
    }
    const double sup = solve_mb(1.0 / 3.0 - 1e-12);
    CHECK_THROWS_AS(farthest_param_inverse(sup * 1.01), std::invalid_argument);
    CHECK_THROWS_AS(farthest_param_inverse(0.0), std::invalid_argument);
}

TEST_CASE("farthest point from the left anchor is the right anchor") {
    // every other ellipse point is strictly closer to A = (-2, 0)
    const Eigen::Vector2d a(-2.0, 0.0);
    for (int i = 1; i < 1000; ++i) {
        const double t = 2.0 * std::numbers::pi * i / 1000.0;
        const Eigen::Vector2d e(2.0 * std::cos(t), std::sin(t));
        REQUIRE((a - e).norm() < 4.0);
    }
}

TEST_CASE("plan_component: back-chained parameters") {
    const auto g = fm({2, 1, 1, 3, 4, 5});  // chain of length 4 onto a 2-cycle
    const auto plan = plan_component(g, {0, 1, 2, 3, 4, 5}, 0.25);
    CHECK(plan.a0 == 0);
    CHECK(plan.b0 == 1);
    CHECK(plan.max_level == 4);
    REQUIRE(plan.b_chain.size() == 4);
    for (std::size_t i = 1; i < plan.b_chain.size(); ++i) {
        CHECK(plan.b_chain[i] < 1.0 / 3.0);
        CHECK(plan.b_chain[i - 1] == Catch::Approx(solve_mb(plan.b_chain[i])).margin(1e-12));
    }
    CHECK(plan.b_chain.back() > plan.b_chain.front());
}

TEST_CASE("realize_component: bare 2-cycle lands on the anchors") {
    const auto g = fm({2, 1, 4, 3});
    const Eigen::Vector2d a(0.0, 1.0), b(0.0, -1.0);
    const auto frag = realize_component(g, {0, 1}, a, b, 0.05, 1);
    REQUIRE(frag.size() == 2);
    CHECK((frag.at(0) - a).norm() == Catch::Approx(0.0).margin(1e-12));
    CHECK((frag.at(1) - b).norm() == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("realize_component: tail fragment realizes its farthest map locally") {
    const auto g = fm({2, 1, 1});
    const Eigen::Vector2d a(1.0, 1.0), b(3.0, 1.0);
    const double eps = 0.1;
    const auto frag = realize_component(g, {0, 1, 2}, a, b, eps, 3);
    REQUIRE(frag.size() == 3);
    for (const auto& [v, pt] : frag) {
        const double to_anchor = std::min((pt - a).norm(), (pt - b).norm());
        CHECK(to_anchor <= eps + 1e-12);
        for (const auto& [u, pu] : frag) {
            if (u == v || u == g(v)) continue;
            CHECK((pt - pu).norm() < (pt - frag.at(g(v))).norm());
        }
    }
}

TEST_CASE("realize_component: chain stays near the anchors") {
    const auto g = fm({2, 1, 1, 3, 4, 5});
    const Eigen::Vector2d a(-1.0, 0.0), b(1.0, 0.0);
    const double eps = 0.05;
    const auto frag = realize_component(g, {0, 1, 2, 3, 4, 5}, a, b, eps, 5);
    for (const auto& [v, pt] : frag) {
        const double to_anchor = std::min((pt - a).norm(), (pt - b).norm());
        CHECK(to_anchor <= eps + 1e-12);
    }
}

TEST_CASE("max_realize: worked instances") {
    const auto g1 = fm({2, 1, 1});
    CHECK(certify_farthest(max_realize(g1, 42), g1).ok);

    const auto g2 = fm({2, 1, 4, 3});  // two components
    CHECK(certify_farthest(max_realize(g2, 42), g2).ok);

    CHECK_THROWS_AS(max_realize(fm({2, 3, 1}), 1), std::invalid_argument);
}

TEST_CASE("max_realize: deep path and wide star") {
    const auto path = fm({2, 1, 1, 3, 4, 5, 6, 7});  // levels up to 6
    CHECK(certify_farthest(max_realize(path, 7), path).ok);

    std::vector<int> star(12, 1);
    star[0] = 2;
    star[5] = 2;
    star[9] = 2;
    const auto wide = fm(star);
    CHECK(certify_farthest(max_realize(wide, 8), wide).ok);
}

TEST_CASE("max_realize is deterministic for a fixed seed") {
    const auto g = fm({2, 1, 1, 3, 1, 2});
    const auto a = max_realize(g, 5);
    const auto b = max_realize(g, 5);
    CHECK(a.coords == b.coords);
}

TEST_CASE("max_realize on random bounded-depth forests") {
    std::mt19937_64 rng(63);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = std::uniform_int_distribution<int>(3, 25)(rng);
        const auto g = testsupport::random_max_realizable(rng, n, 4, 4);
        const auto c = max_realize(g, 1000 + trial);
        REQUIRE(certify_farthest(c, g).ok);
    }
}
