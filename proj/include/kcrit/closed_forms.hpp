#pragma once

#include <cstdint>

namespace kcrit {

/// Volume of the unit ball in R^m, pi^{m/2} / Gamma(1 + m/2).
double ball_volume(int m);

/// Area of the unit sphere S^n in R^{n+1}, (n + 1) * ball_volume(n + 1).
double sphere_area(int n);

/// Bernoulli polynomials of degree 3 and 5 (SpecError for other k).
double bernoulli_poly(int k, double x);

/// Unit circle, homogeneous forms of degree ell: 2 sqrt(3 ell - 2).
double circle_veronese_expectation(int degree);

/// Unit circle, trigonometric polynomials of degree <= n:
/// 2 sqrt(3 B5(n+1) / (5 B3(n+1))) = 2 sqrt(sum k^4 / sum k^2).
double trig_expectation(int n);

/// The same value computed from exact power sums.
double trig_expectation_power_sums(int n);

struct MomentCheckConfig {
    std::int64_t samples = 1'000'000;
    std::uint64_t seed = 7;
};

struct MomentCheck {
    double measured = 0.0;
    double reference = 0.0;
    bool monte_carlo = false;
};

/// Integral over S^m of |<v0, w>| for |v0| = v0_length, against 2 ω_m |v0|.
/// m = 1, 2 use deterministic quadrature, larger m use Monte Carlo.
MomentCheck absolute_moment_check(int m, double v0_length, const MomentCheckConfig& config = {});

}  // namespace kcrit
