#pragma once

#include <Eigen/Core>

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "kcrit/knot.hpp"

namespace kcrit {

/// Values and parameter derivatives of every orthonormal basis function
/// restricted to a knot: g_i(t) = v_i(x(t)), dg = d/dt g, d2g = d^2/dt^2 g.
struct RestrictedJet {
    Eigen::VectorXd g;
    Eigen::VectorXd dg;
    Eigen::VectorXd d2g;
};

enum class FamilyKind { homogeneous, trig, custom };

/// Values, gradients (N x n) and Hessians (N matrices n x n) of a basis of
/// ambient functions at a point of R^n.
struct AmbientJet {
    Eigen::VectorXd values;
    Eigen::MatrixXd gradients;
    std::vector<Eigen::MatrixXd> hessians;
};

using AmbientBasis = std::function<AmbientJet(const Eigen::VectorXd&)>;

namespace detail {
class FamilyImpl;
}

/// A finite-dimensional space of smooth functions together with an
/// orthonormal basis. Coefficient vectors are always expressed in that basis,
/// so the uniform measure on the unit sphere of coefficients is the uniform
/// measure on the unit sphere of the family.
class FunctionFamily {
public:
    explicit FunctionFamily(std::shared_ptr<const detail::FamilyImpl> impl);

    int dim() const;
    FamilyKind kind() const;
    /// Dimension of the ambient space the functions live on; 0 for families
    /// defined intrinsically on the unit circle.
    int ambient_dim() const;
    /// Degree of the family as a trigonometric polynomial on circles
    /// (ell for homogeneous forms, n for trig), 0 when unknown.
    int circle_degree() const;
    std::string describe() const;

    /// Throws SpecError when the family cannot be restricted to this knot.
    void check_applicable(const Knot& knot) const;

    RestrictedJet restrict_to(const Knot& knot, double t) const;

private:
    std::shared_ptr<const detail::FamilyImpl> impl_;
};

namespace detail {
class FamilyImpl {
public:
    virtual ~FamilyImpl() = default;
    virtual int dim() const = 0;
    virtual FamilyKind kind() const = 0;
    virtual int ambient_dim() const = 0;
    virtual int circle_degree() const = 0;
    virtual std::string describe() const = 0;
    virtual void check_applicable(const Knot& knot) const = 0;
    virtual RestrictedJet restrict_to(const Knot& knot, double t) const = 0;
};
}  // namespace detail

/// Homogeneous polynomials of degree ell on R^n in the weighted-monomial
/// orthonormal basis (same coordinate order as VeroneseChart).
FunctionFamily homogeneous_family(int n, int degree);

/// Trigonometric polynomials of degree <= n on the unit circle with basis
/// 1, sqrt2 cos t, sqrt2 sin t, ..., sqrt2 cos nt, sqrt2 sin nt.
FunctionFamily trig_family(int n);

/// Values of the trig basis at angle theta, in the order above.
Eigen::VectorXd trig_basis_values(int n, double theta);

/// A user basis with its Gram matrix. The basis is orthonormalized through
/// the Cholesky factor of the Gram matrix, which must be symmetric positive
/// definite (DegeneracyError otherwise).
FunctionFamily custom_family(int ambient_dim, AmbientBasis basis, const Eigen::MatrixXd& gram,
                             std::string name = "custom");

inline constexpr double kDefaultNondegTol = 1e-8;

struct NondegeneracyReport {
    double min_norm = 0.0;
    double argmin = 0.0;
    double max_norm = 0.0;

    bool admissible(double rel_tol = kDefaultNondegTol) const {
        return min_norm > rel_tol * max_norm;
    }
};

/// Scans |dg(t)| on a uniform grid. A vanishing minimum means some point of
/// the knot is critical for every function in the family.
NondegeneracyReport check_nondegeneracy(const FunctionFamily& family, const Knot& knot,
                                        int grid_size = kDefaultValidationGrid);

/// DegeneracyError unless the report is admissible.
void require_nondegenerate(const FunctionFamily& family, const Knot& knot,
                           int grid_size = kDefaultValidationGrid, double rel_tol = kDefaultNondegTol);

}  // namespace kcrit
