#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "kcrit/knot.hpp"
#include "kcrit/quadrature.hpp"

namespace kcrit {

/// Exponent tuple alpha with |alpha| = degree.
using MultiIndex = std::vector<int>;

/// Number of monomials of degree `degree` in `n` variables, C(n + degree - 1, degree).
std::int64_t sym_dim(int n, int degree);

/// All multi-indices of the given degree in descending lexicographic order,
/// e.g. n = 2, degree 2: (2,0), (1,1), (0,2). Degree 1 gives the identity chart.
std::vector<MultiIndex> enumerate_multi_indices(int n, int degree);

/// Coordinates of the degree-ell Veronese map in the orthonormal basis of
/// weighted monomials sqrt(ell! / prod alpha_i!) x^alpha.
///
/// Coordinate j of eval(x) is the value at x of the j-th orthonormal basis
/// polynomial, so a form with coefficient vector c evaluates to c . eval(x).
/// directional(x, u) and second_directional(x, u, w) are the first and
/// second derivatives of eval along the given directions.
class VeroneseChart {
public:
    VeroneseChart(int n, int degree);

    int ambient_dim() const { return n_; }
    int degree() const { return degree_; }
    int dim() const { return static_cast<int>(indices_.size()); }
    const std::vector<MultiIndex>& indices() const { return indices_; }
    /// sqrt of the multinomial coefficient for each index.
    const std::vector<double>& weights() const { return weights_; }

    Eigen::VectorXd eval(const Eigen::VectorXd& x) const;
    Eigen::VectorXd directional(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const;
    Eigen::VectorXd second_directional(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                       const Eigen::VectorXd& w) const;

    /// Gradient of every coordinate at x, one row per coordinate (dim x n).
    Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;

private:
    void check_dim(const Eigen::VectorXd& v, const char* what) const;

    int n_;
    int degree_;
    std::vector<MultiIndex> indices_;
    std::vector<double> weights_;
};

/// The curve t -> eval(x(t)) as a knot in R^{sym_dim}. Requires 0 not on the
/// knot when degree >= 2 (DegeneracyError otherwise).
Knot veronese_immersion(const VeroneseChart& chart, const Knot& knot,
                        int validation_grid = kDefaultValidationGrid);

/// Total curvature of a closed immersed curve: integral of |T'(t)| with
/// T = x'/|x'|, evaluated in the native parameter.
double total_curvature(const Knot& knot, const QuadratureConfig& config = {});

/// Same integral, reporting grid size and convergence instead of throwing.
Integral total_curvature_integral(const Knot& knot, const QuadratureConfig& config = {});

}  // namespace kcrit
