#include "kcrit/closed_forms.hpp"

#include "kcrit/errors.hpp"
#include "kcrit/monte_carlo.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace kcrit {

double ball_volume(int m) {
    if (m < 0) throw SpecError("ball_volume: negative dimension");
    const double half = 0.5 * m;
    return std::exp(half * std::log(std::numbers::pi) - std::lgamma(1.0 + half));
}

double sphere_area(int n) {
    if (n < 0) throw SpecError("sphere_area: negative dimension");
    return (n + 1) * ball_volume(n + 1);
}

double bernoulli_poly(int k, double x) {
    switch (k) {
        case 3: return x * x * x - 1.5 * x * x + 0.5 * x;
        case 5: {
            const double x2 = x * x;
            const double x3 = x2 * x;
            return x3 * x2 - 2.5 * x2 * x2 + (5.0 / 3.0) * x3 - x / 6.0;
        }
        default: throw SpecError("bernoulli_poly: only degrees 3 and 5 are supported, got " + std::to_string(k));
    }
}

double circle_veronese_expectation(int degree) {
    if (degree < 1) throw SpecError("circle_veronese_expectation: degree must be at least 1");
    return 2.0 * std::sqrt(3.0 * degree - 2.0);
}

double trig_expectation_power_sums(int n) {
    if (n < 1) throw SpecError("trig_expectation: degree must be at least 1");
    // Exact in double while sum k^4 < 2^53, i.e. n up to about 1.3e3; beyond
    // that the rounding is still far below 1e-12 relative.
    double s2 = 0.0;
    double s4 = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double k2 = static_cast<double>(k) * k;
        s2 += k2;
        s4 += k2 * k2;
    }
    return 2.0 * std::sqrt(s4 / s2);
}

double trig_expectation(int n) {
    if (n < 1) throw SpecError("trig_expectation: degree must be at least 1");
    const double x = n + 1.0;
    const double value = 2.0 * std::sqrt(3.0 * bernoulli_poly(5, x) / (5.0 * bernoulli_poly(3, x)));
    const double check = trig_expectation_power_sums(n);
    if (std::abs(value - check) > 1e-12 * check) {
        throw ConvergenceError("trig_expectation: Bernoulli and power-sum forms disagree at n = " +
                               std::to_string(n));
    }
    return value;
}

MomentCheck absolute_moment_check(int m, double v0_length, const MomentCheckConfig& config) {
    if (m < 1) throw SpecError("absolute_moment_check: m must be at least 1");
    if (!(v0_length >= 0.0)) throw SpecError("absolute_moment_check: |v0| must be nonnegative");
    using boost::math::quadrature::gauss_kronrod;
    constexpr double pi = std::numbers::pi;

    MomentCheck out;
    out.reference = 2.0 * ball_volume(m) * v0_length;
    auto abs_cos = [](double a) { return std::abs(std::cos(a)); };

    if (m == 1) {
        // Circle: integrate |v0| |cos theta| piecewise between the kinks.
        double total = 0.0;
        const double breaks[] = {0.0, 0.5 * pi, 1.5 * pi, 2.0 * pi};
        for (int i = 0; i < 3; ++i) {
            total += gauss_kronrod<double, 61>::integrate(abs_cos, breaks[i], breaks[i + 1], 0, 1e-14);
        }
        out.measured = v0_length * total;
    } else if (m == 2) {
        // S^2 with v0 along the pole: |v0| |cos phi| sin phi over phi, times
        // the azimuthal integral.
        auto polar = [&](double phi) { return abs_cos(phi) * std::sin(phi); };
        const double polar_part = gauss_kronrod<double, 61>::integrate(polar, 0.0, 0.5 * pi, 0, 1e-14) +
                                  gauss_kronrod<double, 61>::integrate(polar, 0.5 * pi, pi, 0, 1e-14);
        const double azimuth = gauss_kronrod<double, 61>::integrate([](double) { return 1.0; }, 0.0, 2.0 * pi);
        out.measured = v0_length * azimuth * polar_part;
    } else {
        // Sphere area times E|w_0| for w uniform on S^m.
        Rng rng(config.seed);
        double acc = 0.0;
        for (std::int64_t i = 0; i < config.samples; ++i) acc += std::abs(sample_unit_sphere(m + 1, rng)[0]);
        out.measured = v0_length * sphere_area(m) * acc / static_cast<double>(config.samples);
        out.monte_carlo = true;
    }
    return out;
}

}  // namespace kcrit
