#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "realizer/spherical.hpp"

using namespace realizer;

namespace {

Eigen::VectorXd unit(int k, int axis) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(k);
    v(axis) = 1.0;
    return v;
}

// Near-orthogonal unit vectors with pairwise dots below the given bound.
std::vector<Eigen::VectorXd> tilted_frame(std::mt19937_64& rng, int k, int s, double tilt) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd m(k, s);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < s; ++j) m(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(k, s);
    std::vector<Eigen::VectorXd> out;
    for (int j = 0; j < s; ++j) {
        Eigen::VectorXd noise(k);
        for (int i = 0; i < k; ++i) noise(i) = gauss(rng);
        Eigen::VectorXd v = q.col(j) + (tilt / noise.norm()) * noise;
        out.push_back(v / v.norm());
    }
    return out;
}

}  // namespace

TEST_CASE("cap_area closed forms on the 2-sphere") {
    CHECK(cap_area(2, kPi / 2) == Catch::Approx(2 * kPi).margin(1e-9));
    CHECK(cap_area(2, kPi / 3) == Catch::Approx(2 * kPi * (1 - std::cos(kPi / 3))).margin(1e-9));
    CHECK(cap_area(2, kPi / 3) == Catch::Approx(kPi).margin(1e-9));
    CHECK(cap_area(2, kPi) == Catch::Approx(4 * kPi).margin(1e-9));
}

TEST_CASE("cap_area: circle caps are arcs") {
    CHECK(cap_area(1, 0.7) == Catch::Approx(1.4).margin(1e-10));
    CHECK(full_sphere_area(1) == Catch::Approx(2 * kPi).margin(1e-12));
}

TEST_CASE("hemisphere is half the sphere across dimensions") {
    for (int d = 1; d <= 30; ++d)
        CHECK(cap_area(d, kPi / 2) / full_sphere_area(d) == Catch::Approx(0.5).margin(1e-9));
    // log-space path
    for (int d : {50, 80, 120})
        CHECK(cap_area(d, kPi / 2) / full_sphere_area(d) == Catch::Approx(0.5).margin(1e-8));
}

TEST_CASE("cap_area is monotone in phi and zero at zero") {
    CHECK(cap_area(5, 0.0) == 0.0);
    double prev = 0.0;
    for (double phi = 0.1; phi <= kPi + 1e-9; phi += 0.1) {
        const double a = cap_area(5, std::min(phi, kPi));
        CHECK(a > prev);
        prev = a;
    }
    CHECK(prev == Catch::Approx(full_sphere_area(5)).margin(1e-9));
}

TEST_CASE("cap_area domain checks") {
    CHECK_THROWS_AS(cap_area(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(cap_area(2, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(cap_area(2, kPi + 0.1), std::invalid_argument);
}

TEST_CASE("cap_ratio_bounds: worked example and degenerate guard") {
    const auto [lo, hi] = cap_ratio_bounds(kPi / 6, kPi / 2, 4);
    const double ratio = cap_area(3, kPi / 6) / cap_area(3, kPi / 2);
    CHECK(lo < ratio);
    CHECK(ratio < hi);

    // collapsing interval: the upper bound explodes but nothing fails
    const auto [lo2, hi2] = cap_ratio_bounds(0.5, 0.5 + 1e-13, 5);
    CHECK(lo2 > 0.0);
    CHECK(hi2 > 1e10);
}

TEST_CASE("cap_ratio_bounds bracket the quadrature ratio") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const int k = std::uniform_int_distribution<int>(3, 30)(rng);
        std::uniform_real_distribution<double> angle(1e-3, kPi / 2);
        double phi1 = angle(rng), phi2 = angle(rng);
        if (phi1 > phi2) std::swap(phi1, phi2);
        if (phi2 - phi1 < 1e-6) continue;
        const auto [lo, hi] = cap_ratio_bounds(phi1, phi2, k);
        const double ratio = cap_area(k - 1, phi1) / cap_area(k - 1, phi2);
        REQUIRE(lo < ratio);
        REQUIRE(ratio < hi);
    }
}

TEST_CASE("solve_span basics") {
    const int k = 9;
    const auto zero = solve_span({unit(k, 0)}, {0.0});
    CHECK(zero.norm() == 0.0);

    const auto v = solve_span({unit(k, 0), unit(k, 1)}, {0.001, -0.002});
    CHECK(v(0) == Catch::Approx(0.001).margin(1e-12));
    CHECK(v(1) == Catch::Approx(-0.002).margin(1e-12));
    CHECK(v.tail(k - 2).norm() == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("solve_span rejects out-of-contract inputs") {
    const int k = 9;
    CHECK_THROWS_AS(solve_span({unit(k, 0)}, {0.5}), std::invalid_argument);  // |a| too big
    CHECK_THROWS_AS(solve_span({unit(k, 0), unit(k, 0)}, {0.001, 0.001}),
                    std::invalid_argument);  // dot = 1
    CHECK_THROWS_AS(solve_span({2.0 * unit(k, 0)}, {0.001}), std::invalid_argument);
    CHECK_THROWS_AS(solve_span({}, {}), std::invalid_argument);
}

TEST_CASE("solve_span: residual and norm bound over random instances") {
    std::mt19937_64 rng(42);
    const double alpha = 1.0 / 500.0;
    for (int trial = 0; trial < 300; ++trial) {
        const int s = std::uniform_int_distribution<int>(1, 7)(rng);
        const int k = std::uniform_int_distribution<int>(std::max(7, s), 24)(rng);
        const auto vs = tilted_frame(rng, k, s, alpha / 4);
        std::vector<double> as(s);
        std::uniform_real_distribution<double> coef(-alpha, alpha);
        for (auto& a : as) a = coef(rng);
        const auto v = solve_span(vs, as);
        for (int i = 0; i < s; ++i) REQUIRE(std::abs(v.dot(vs[i]) - as[i]) <= 1e-9);
        REQUIRE(v.norm() <= 8.0 * alpha);
    }
}

TEST_CASE("solve_span is stable under input permutation") {
    std::mt19937_64 rng(43);
    const double alpha = 1.0 / 500.0;
    auto vs = tilted_frame(rng, 12, 5, alpha / 4);
    std::vector<double> as{0.001, -0.0015, 0.0005, 0.002, -0.001};
    const auto v1 = solve_span(vs, as);
    std::reverse(vs.begin(), vs.end());
    std::reverse(as.begin(), as.end());
    const auto v2 = solve_span(vs, as);
    CHECK((v1 - v2).norm() <= 1e-9);
}

TEST_CASE("boundary_intersection: equators") {
    const int k = 9;
    const auto b1 = boundary_intersection({SphereCap(unit(k, 0), kPi / 2)}, k);
    CHECK(b1.offset.norm() == Catch::Approx(0.0).margin(1e-12));
    CHECK(b1.radius == Catch::Approx(1.0).margin(1e-12));
    CHECK(b1.basis.cols() == k - 1);
    CHECK((b1.basis.transpose() * unit(k, 0)).norm() == Catch::Approx(0.0).margin(1e-10));

    const auto b2 = boundary_intersection(
        {SphereCap(unit(k, 0), kPi / 2), SphereCap(unit(k, 1), kPi / 2)}, k);
    CHECK(b2.radius == Catch::Approx(1.0).margin(1e-12));
    CHECK(b2.basis.cols() == k - 2);
    CHECK(b2.sphere_dim() == k - 3);
}

TEST_CASE("boundary_intersection rejects bad inputs") {
    CHECK_THROWS_AS(boundary_intersection({SphereCap(unit(8, 0), kPi / 2)}, 8),
                    std::invalid_argument);  // k < 9
    CHECK_THROWS_AS(boundary_intersection({SphereCap(unit(9, 0), kPi / 4)}, 9),
                    std::invalid_argument);  // cos too large
    CHECK_THROWS_AS(boundary_intersection({}, 9), std::invalid_argument);
}

TEST_CASE("boundary_intersection: sampled points satisfy every cap equation") {
    std::mt19937_64 rng(44);
    const double alpha = 1.0 / 500.0;
    for (int trial = 0; trial < 30; ++trial) {
        const int k = std::uniform_int_distribution<int>(9, 16)(rng);
        const int t = std::uniform_int_distribution<int>(1, 7)(rng);
        const auto centers = tilted_frame(rng, k, t, alpha / 4);
        std::vector<SphereCap> caps;
        std::uniform_real_distribution<double> cosine(-alpha, alpha);
        for (int i = 0; i < t; ++i) caps.emplace_back(centers[i], std::acos(cosine(rng)));
        const auto b = boundary_intersection(caps, k);
        REQUIRE(b.radius >= std::sqrt(1.0 - 64.0 * alpha * alpha) - 1e-12);
        for (int probe = 0; probe < 100; ++probe) {
            const auto x = sample_on(b, {}, 1000 + probe, 10);
            REQUIRE(x.has_value());
            REQUIRE(std::abs(x->norm() - 1.0) <= 1e-9);
            for (int i = 0; i < t; ++i)
                REQUIRE(std::abs(x->dot(centers[i]) - std::cos(caps[i].angle)) <= 1e-9);
        }
    }
}

TEST_CASE("sample_on: no forbidden caps succeeds immediately and deterministically") {
    const auto b = BoundarySphere::whole_sphere(9);
    const auto x1 = sample_on(b, {}, 7, 1);
    const auto x2 = sample_on(b, {}, 7, 1);
    REQUIRE(x1.has_value());
    REQUIRE(x2.has_value());
    CHECK((*x1 - *x2).norm() == 0.0);
    CHECK(std::abs(x1->norm() - 1.0) <= 1e-12);
}

TEST_CASE("sample_on: engineered impossibility exhausts the budget") {
    // a zero-dimensional boundary sphere: only +-e2 are feasible, and both
    // fall inside the forbidden caps
    BoundarySphere b;
    b.offset = Eigen::VectorXd::Zero(9);
    b.basis = Eigen::MatrixXd::Zero(9, 1);
    b.basis(1, 0) = 1.0;
    b.radius = 1.0;
    const double delta = std::acos(1.0 / 1000.0);
    const auto x = sample_on(b, {SphereCap(unit(9, 1), delta), SphereCap(-unit(9, 1), delta)},
                             123, 2000);
    CHECK_FALSE(x.has_value());
}

TEST_CASE("sample_on respects forbidden caps") {
    std::mt19937_64 rng(45);
    const auto b = BoundarySphere::whole_sphere(10);
    const double delta = std::acos(1.0 / 1000.0);
    std::vector<SphereCap> forbidden{SphereCap(unit(10, 0), delta),
                                     SphereCap(-unit(10, 0), delta)};
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = sample_on(b, forbidden, trial, 100000);
        REQUIRE(x.has_value());
        CHECK(std::abs(x->dot(unit(10, 0))) < 1.0 / 1000.0);
    }
}
