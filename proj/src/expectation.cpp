#include "kcrit/expectation.hpp"

#include "kcrit/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace kcrit {

namespace {

// Absolute floor for a single-point check; the relative test over the whole
// knot happens in require_nondegenerate.
constexpr double kPointwiseFloor = 1e-300;

void require_nonzero(double norm, double t) {
    if (!(norm > kPointwiseFloor)) {
        throw DegeneracyError("degenerate point at t = " + std::to_string(t) +
                              ": every function of the family is critical there");
    }
}

}  // namespace

Eigen::VectorXd xi_dual(const FunctionFamily& family, const Knot& knot, double t) {
    Eigen::VectorXd w = family.restrict_to(knot, t).dg;
    require_nonzero(w.norm(), t);
    return w;
}

Eigen::VectorXd nu(const FunctionFamily& family, const Knot& knot, double t) {
    const Eigen::VectorXd w = xi_dual(family, knot, t);
    return w / w.norm();
}

NuJet nu_jet(const FunctionFamily& family, const Knot& knot, double t) {
    const RestrictedJet jet = family.restrict_to(knot, t);
    const Eigen::VectorXd& w = jet.dg;
    const Eigen::VectorXd& w_dot = jet.d2g;
    const double norm = w.norm();
    require_nonzero(norm, t);
    NuJet out;
    out.value = w / norm;
    out.derivative = (w_dot - (w.dot(w_dot) / (norm * norm)) * w) / norm;
    return out;
}

Eigen::VectorXd nu_prime(const FunctionFamily& family, const Knot& knot, double t) {
    return nu_jet(family, knot, t).derivative;
}

Expectation expected_critical_points(const FunctionFamily& family, const Knot& knot,
                                     const ExpectationOptions& options) {
    require_nondegenerate(family, knot, options.validation_grid, options.nondeg_tol);
    const Integral integral = periodic_trapezoid(
        [&](double t) { return nu_jet(family, knot, t).derivative.norm(); }, knot.period(),
        options.quadrature);
    return {integral.value / std::numbers::pi, integral.points, integral.converged};
}

}  // namespace kcrit
