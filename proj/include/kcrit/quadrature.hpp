#pragma once

#include <cstddef>
#include <functional>

namespace kcrit {

struct QuadratureConfig {
    double qtol = 1e-10;
    std::size_t initial_points = 256;
    std::size_t max_points = std::size_t{1} << 20;
    // Refinement continues up to this cap when the integrand has kinks and
    // convergence is still algebraic at `max_points`.
    std::size_t extended_max_points = std::size_t{1} << 22;
};

struct Integral {
    double value = 0.0;
    std::size_t points = 0;
    bool converged = false;

    /// The value, or ConvergenceError when refinement stalled.
    double checked(const char* what) const;
};

/// Trapezoid rule on a uniform periodic grid over [0, period), doubling the
/// grid until successive estimates differ by less than qtol (relative).
/// Sums use compensated accumulation.
Integral periodic_trapezoid(const std::function<double(double)>& f, double period,
                            const QuadratureConfig& config = {});

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace kcrit
