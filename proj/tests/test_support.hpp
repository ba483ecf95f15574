#pragma once

#include <Eigen/Core>
#include <Eigen/LU>
#include <Eigen/QR>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kcrit/knot.hpp"

namespace kcrit::testing {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Central difference of a vector-valued function.
inline Eigen::VectorXd central_difference(const std::function<Eigen::VectorXd(double)>& f, double t,
                                          double h = 1e-5) {
    return (f(t + h) - f(t - h)) / (2.0 * h);
}

inline double relative_error(const Eigen::VectorXd& got, const Eigen::VectorXd& want) {
    return (got - want).norm() / std::max(1.0, want.norm());
}

/// Knots used across the property tests, with names for diagnostics.
inline std::vector<std::pair<std::string, Knot>> sample_knots() {
    return {
        {"unit circle", builtin_circle(Eigen::Vector2d(0, 0), 1.0)},
        {"offset circle", builtin_circle(Eigen::Vector2d(3, 0), 1.0)},
        {"ellipse", builtin_ellipse(2.0, 1.0)},
        {"trefoil", builtin_trefoil()},
    };
}

/// Haar-ish random rotation (det +1) from the QR factor of a Gaussian matrix.
inline Eigen::MatrixXd random_rotation(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    if (q.determinant() < 0) q.col(0) *= -1.0;
    return q;
}

}  // namespace kcrit::testing
