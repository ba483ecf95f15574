#include "kcrit/quadrature.hpp"

#include "kcrit/errors.hpp"

#include <cmath>
#include <string>

namespace kcrit {

void CompensatedSum::add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

double Integral::checked(const char* what) const {
    if (!converged) {
        throw ConvergenceError(std::string(what) + ": quadrature did not converge after " +
                               std::to_string(points) + " points");
    }
    return value;
}

Integral periodic_trapezoid(const std::function<double(double)>& f, double period,
                            const QuadratureConfig& config) {
    if (!(period > 0.0)) throw SpecError("periodic_trapezoid: period must be positive");
    if (config.initial_points < 2) throw SpecError("periodic_trapezoid: need at least 2 points");

    std::size_t n = config.initial_points;
    CompensatedSum nodes;
    for (std::size_t i = 0; i < n; ++i) {
        nodes.add(f(period * static_cast<double>(i) / static_cast<double>(n)));
    }
    double estimate = period * nodes.value() / static_cast<double>(n);
    double previous_delta = 0.0;

    while (true) {
        const std::size_t refined = 2 * n;
        const bool past_soft_cap = refined > config.max_points;
        if (refined > config.extended_max_points) break;

        // Only the new midpoints need evaluation; old nodes are reused.
        for (std::size_t i = 0; i < n; ++i) {
            const double t = period * (static_cast<double>(2 * i + 1) / static_cast<double>(refined));
            nodes.add(f(t));
        }
        const double next = period * nodes.value() / static_cast<double>(refined);
        const double delta = std::abs(next - estimate);
        const double scale = std::max(std::abs(next), 1e-300);
        estimate = next;
        n = refined;

        if (delta <= config.qtol * scale || delta == 0.0) {
            return {estimate, n, true};
        }
        // Past the soft cap keep refining only while the error still shrinks
        // (algebraic convergence from an integrand kink).
        if (past_soft_cap && previous_delta > 0.0 && delta > 0.75 * previous_delta) break;
        previous_delta = delta;
    }
    return {estimate, n, false};
}

}  // namespace kcrit
