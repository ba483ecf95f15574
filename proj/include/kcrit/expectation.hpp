#pragma once

#include <Eigen/Core>

#include "kcrit/family.hpp"
#include "kcrit/knot.hpp"
#include "kcrit/quadrature.hpp"

namespace kcrit {

/// Coefficients of the functional v -> d/dt v(x(t)) in the orthonormal basis.
/// Proportional (by |x'(t)| > 0) to the arclength version, so the unit map
/// built from it is the same. Throws DegeneracyError when it vanishes.
Eigen::VectorXd xi_dual(const FunctionFamily& family, const Knot& knot, double t);

/// The unit map t -> xi_dual / |xi_dual| into the unit sphere of the family.
Eigen::VectorXd nu(const FunctionFamily& family, const Knot& knot, double t);

/// Exact t-derivative of nu: (w' - (w.w' / |w|^2) w) / |w| with w = dg.
Eigen::VectorXd nu_prime(const FunctionFamily& family, const Knot& knot, double t);

/// Both at once, sharing one restriction evaluation.
struct NuJet {
    Eigen::VectorXd value;
    Eigen::VectorXd derivative;
};
NuJet nu_jet(const FunctionFamily& family, const Knot& knot, double t);

struct ExpectationOptions {
    QuadratureConfig quadrature{};
    int validation_grid = kDefaultValidationGrid;
    double nondeg_tol = kDefaultNondegTol;
};

struct Expectation {
    double mu = 0.0;
    std::size_t grid_points = 0;
    bool converged = false;
};

/// Expected number of critical points on the knot of a uniformly random unit
/// function of the family: (1/pi) times the length of the curve nu.
/// Throws DegeneracyError when the family is degenerate somewhere on the knot.
Expectation expected_critical_points(const FunctionFamily& family, const Knot& knot,
                                     const ExpectationOptions& options = {});

}  // namespace kcrit
