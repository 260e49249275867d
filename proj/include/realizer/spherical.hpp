#pragma once

// Hyperspherical cap numerics and the small geometric solvers behind the R^k
// construction: cap areas by quadrature, exponential bounds on cap-area
// ratios, the span-constrained linear solve, intersections of cap boundaries,
// and rejection sampling on those intersections.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "realizer/detail/quadrature.hpp"
#include "realizer/detail/rng.hpp"

namespace realizer {

inline constexpr double kPi = std::numbers::pi;

// Surface area of the unit sphere S^d in R^{d+1}.
inline double full_sphere_area(int d) {
    if (d < 1) throw std::invalid_argument("full_sphere_area: need d >= 1");
    return 2.0 * std::pow(kPi, 0.5 * (d + 1)) / std::tgamma(0.5 * (d + 1));
}

// Area of the cap of angular radius phi on S^d:
//   (2 pi^{d/2} / Gamma(d/2)) * integral_0^phi sin^{d-1}(theta) dtheta.
// High dimensions are accumulated in log space so the sin^{d-1} factor cannot
// underflow inside the quadrature.
inline double cap_area(int d, double phi) {
    if (d < 1) throw std::invalid_argument("cap_area: need d >= 1");
    if (!(phi >= 0.0 && phi <= kPi)) throw std::invalid_argument("cap_area: phi outside [0, pi]");
    if (phi == 0.0) return 0.0;

    if (d < 50) {
        const double integral = detail::adaptive_simpson(
            [d](double t) { return std::pow(std::sin(t), d - 1); }, 0.0, phi, 1e-10);
        return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d) * integral;
    }
    const double peak = std::sin(std::min(phi, 0.5 * kPi));
    const double log_peak = std::log(peak);
    const double integral = detail::adaptive_simpson(
        [d, log_peak](double t) {
            const double s = std::sin(t);
            if (s <= 0.0) return 0.0;
            return std::exp((d - 1) * (std::log(s) - log_peak));
        },
        0.0, phi, 1e-10);
    const double log_area = std::log(2.0) + 0.5 * d * std::log(kPi) - std::lgamma(0.5 * d) +
                            (d - 1) * log_peak + std::log(integral);
    return std::exp(log_area);
}

// Closed-form bracket for cap_area(k-1, phi1) / cap_area(k-1, phi2):
//   lower = phi1 sin^{k-2}(phi1/2) / (2 phi2 sin^{k-2}(phi2))
//   upper = 2 phi1 sin^{k-2}(phi1) / ((phi2-phi1) sin^{k-2}((phi1+phi2)/2))
// The upper bound blows up as phi2 -> phi1; that is the documented behavior.
inline std::pair<double, double> cap_ratio_bounds(double phi1, double phi2, int k) {
    if (!(phi1 > 0.0 && phi1 < phi2 && phi2 <= 0.5 * kPi))
        throw std::invalid_argument("cap_ratio_bounds: need 0 < phi1 < phi2 <= pi/2");
    if (k < 3) throw std::invalid_argument("cap_ratio_bounds: need k >= 3");
    const double p = k - 2;
    const double log_lower = std::log(phi1) + p * std::log(std::sin(0.5 * phi1)) -
                             std::log(2.0 * phi2) - p * std::log(std::sin(phi2));
    const double log_upper = std::log(2.0 * phi1) + p * std::log(std::sin(phi1)) -
                             std::log(phi2 - phi1) -
                             p * std::log(std::sin(0.5 * (phi1 + phi2)));
    return {std::exp(log_lower), std::exp(log_upper)};
}

struct SphereCap {
    Eigen::VectorXd center;
    double angle = 0.0;

    SphereCap(Eigen::VectorXd center_, double angle_)
        : center(std::move(center_)), angle(angle_) {
        if (std::abs(center.norm() - 1.0) > 1e-12)
            throw std::invalid_argument("SphereCap: center must be a unit vector");
        if (!(angle > 0.0 && angle < kPi))
            throw std::invalid_argument("SphereCap: angle outside (0, pi)");
    }
};

// The sphere T = intersection of cap boundaries, stored as an offset inside
// the constraint span plus an orthonormal basis of the orthogonal complement.
struct BoundarySphere {
    Eigen::VectorXd offset;
    Eigen::MatrixXd basis;  // ambient_dim x complement_dim, orthonormal columns
    double radius = 0.0;

    int ambient_dim() const { return static_cast<int>(offset.size()); }
    int sphere_dim() const { return static_cast<int>(basis.cols()) - 1; }

    static BoundarySphere whole_sphere(int k) {
        BoundarySphere b;
        b.offset = Eigen::VectorXd::Zero(k);
        b.basis = Eigen::MatrixXd::Identity(k, k);
        b.radius = 1.0;
        return b;
    }
};

// Unique v in span(v_1..v_s) with v . v_i = a_i. Requires near-orthogonal unit
// vectors and small targets (max magnitude < 1/100), which also guarantees
// ||v|| <= 8 * max magnitude.
inline Eigen::VectorXd solve_span(const std::vector<Eigen::VectorXd>& vs,
                                  const std::vector<double>& as) {
    const int s = static_cast<int>(vs.size());
    if (s < 1 || s > 7) throw std::invalid_argument("solve_span: need 1 <= s <= 7");
    if (as.size() != vs.size()) throw std::invalid_argument("solve_span: size mismatch");
    const int k = static_cast<int>(vs.front().size());
    if (k < s) throw std::invalid_argument("solve_span: need k >= s");

    double alpha = 0.0;
    for (int i = 0; i < s; ++i) {
        if (static_cast<int>(vs[i].size()) != k)
            throw std::invalid_argument("solve_span: dimension mismatch");
        if (std::abs(vs[i].norm() - 1.0) > 1e-10)
            throw std::invalid_argument("solve_span: vectors must be unit");
        alpha = std::max(alpha, std::abs(as[i]));
        for (int j = i + 1; j < s; ++j) alpha = std::max(alpha, std::abs(vs[i].dot(vs[j])));
    }
    if (!(alpha < 0.01))
        throw std::invalid_argument("solve_span: dot products or targets exceed 1/100");

    Eigen::MatrixXd gram(s, s);
    Eigen::VectorXd rhs(s);
    for (int i = 0; i < s; ++i) {
        rhs(i) = as[i];
        for (int j = 0; j < s; ++j) gram(i, j) = vs[i].dot(vs[j]);
    }
    const Eigen::VectorXd lambda = gram.ldlt().solve(rhs);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(k);
    for (int i = 0; i < s; ++i) v += lambda(i) * vs[i];

    for (int i = 0; i < s; ++i) {
        if (std::abs(v.dot(vs[i]) - as[i]) > 1e-9)
            throw std::logic_error("solve_span: residual above 1e-9");
    }
    if (v.norm() > 8.0 * alpha + 1e-12)
        throw std::logic_error("solve_span: norm bound 8*alpha violated");
    return v;
}

// Intersection of the boundaries of t caps with near-orthogonal centers and
// near-right angles: a (k-t-1)-sphere centered at the solved span point.
inline BoundarySphere boundary_intersection(const std::vector<SphereCap>& caps, int k) {
    const int t = static_cast<int>(caps.size());
    if (t < 1 || t > 7) throw std::invalid_argument("boundary_intersection: need 1 <= t <= 7");
    if (k < 9) throw std::invalid_argument("boundary_intersection: need k >= 9");

    constexpr double kAlpha = 1.0 / 500.0;
    constexpr double kSlack = 1e-12;
    std::vector<Eigen::VectorXd> centers;
    std::vector<double> cosines;
    for (const auto& cap : caps) {
        if (static_cast<int>(cap.center.size()) != k)
            throw std::invalid_argument("boundary_intersection: dimension mismatch");
        const double c = std::cos(cap.angle);
        if (std::abs(c) > kAlpha + kSlack)
            throw std::invalid_argument("boundary_intersection: |cos(angle)| exceeds 1/500");
        centers.push_back(cap.center);
        cosines.push_back(c);
    }
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j)
            if (std::abs(centers[i].dot(centers[j])) > kAlpha + kSlack)
                throw std::invalid_argument(
                    "boundary_intersection: |center_i . center_j| exceeds 1/500");

    BoundarySphere b;
    b.offset = solve_span(centers, cosines);
    const double norm2 = b.offset.squaredNorm();
    b.radius = std::sqrt(1.0 - norm2);
    if (b.radius < std::sqrt(1.0 - 64.0 * kAlpha * kAlpha) - 1e-12)
        throw std::logic_error("boundary_intersection: radius below sqrt(1 - 64 alpha^2)");

    Eigen::MatrixXd m(k, t);
    for (int i = 0; i < t; ++i) m.col(i) = centers[i];
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(k, k);
    b.basis = q.rightCols(k - t);
    for (int i = 0; i < t; ++i) {
        if ((b.basis.transpose() * centers[i]).cwiseAbs().maxCoeff() > 1e-10)
            throw std::logic_error("boundary_intersection: basis not orthogonal to centers");
    }
    return b;
}

// Uniform rejection sampling on the boundary sphere, rejecting any draw that
// lands inside a forbidden cap. Absence after the attempt budget is a value,
// not an error; callers decide whether to restart.
inline std::optional<Eigen::VectorXd> sample_on(const BoundarySphere& b,
                                                const std::vector<SphereCap>& forbidden,
                                                std::uint64_t seed, int max_attempts = 10000) {
    auto rng = detail::make_engine(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int m = static_cast<int>(b.basis.cols());
    Eigen::VectorXd u(m);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        for (int i = 0; i < m; ++i) u(i) = gauss(rng);
        const double norm = u.norm();
        if (norm == 0.0) continue;
        const Eigen::VectorXd x = b.offset + (b.radius / norm) * (b.basis * u);
        bool ok = true;
        for (const auto& cap : forbidden) {
            if (x.dot(cap.center) >= std::cos(cap.angle)) {
                ok = false;
                break;
            }
        }
        if (ok) return x;
    }
    return std::nullopt;
}

}  // namespace realizer
