#pragma once

#include <Eigen/Core>

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "kcrit/quadrature.hpp"

namespace kcrit {

/// What is known about the image of a knot. Families defined intrinsically
/// on the unit circle (trigonometric polynomials) require `unit_circle`;
/// the Monte Carlo scan uses `circle` to pick a grid size.
enum class KnotShape { general, circle, unit_circle };

/// Smooth closed parametric curve t -> x(t) in R^n with exact first and
/// second derivatives. Immutable; evaluators are safe to call concurrently.
class Knot {
public:
    using Evaluator = std::function<Eigen::VectorXd(double)>;

    Knot(int ambient_dim, double period, Evaluator position, Evaluator velocity,
         Evaluator acceleration, KnotShape shape = KnotShape::general);

    int ambient_dim() const { return dim_; }
    double period() const { return period_; }
    KnotShape shape() const { return shape_; }

    Eigen::VectorXd position(double t) const { return (*position_)(t); }
    Eigen::VectorXd velocity(double t) const { return (*velocity_)(t); }
    Eigen::VectorXd acceleration(double t) const { return (*acceleration_)(t); }

private:
    int dim_;
    double period_;
    std::shared_ptr<const Evaluator> position_;
    std::shared_ptr<const Evaluator> velocity_;
    std::shared_ptr<const Evaluator> acceleration_;
    KnotShape shape_;
};

/// One harmonic of a Fourier coordinate: a*cos(k t) + b*sin(k t).
struct Harmonic {
    int k = 0;
    double a = 0.0;
    double b = 0.0;
};

/// Curve input format: per-coordinate harmonic lists, period 2*pi.
struct FourierKnotSpec {
    int dim = 0;
    std::vector<std::vector<Harmonic>> coords;
};

inline constexpr double kDefaultImmersionTol = 1e-9;
inline constexpr int kDefaultValidationGrid = 4096;

/// Builds the knot whose coordinates are the given trigonometric series.
/// Derivatives are the exact termwise derivatives.
Knot knot_from_fourier(const FourierKnotSpec& spec);

/// Parses the JSON format {"dim": n, "coords": [[{"k","a","b"}, ...], ...]}.
FourierKnotSpec parse_fourier_spec(const std::string& json_text);

/// center + radius * (cos t, sin t), t in [0, 2*pi).
Knot builtin_circle(const Eigen::Vector2d& center, double radius);

/// (a cos t, b sin t).
Knot builtin_ellipse(double a, double b);

/// The (2,3) torus knot ((2 + cos 3t) cos 2t, (2 + cos 3t) sin 2t, sin 3t),
/// stored as its harmonic expansion.
FourierKnotSpec trefoil_fourier_spec();
Knot builtin_trefoil();

/// The same curve traced as s -> x(speed * s + shift), s in [0, T / speed).
/// `speed` must be a positive integer so the new curve closes up once.
Knot reparametrize(const Knot& knot, double shift, int speed);

/// The curve R * x(t) for a square matrix R acting on the ambient space.
Knot transform_knot(const Knot& knot, const Eigen::MatrixXd& linear_map);

struct SpeedReport {
    double min_speed = 0.0;
    double argmin = 0.0;
};

/// Minimum of |x'(t)| over a uniform grid of `grid_size` points.
SpeedReport validate_immersion(const Knot& knot, int grid_size = kDefaultValidationGrid);

/// Throws DegeneracyError when the minimum speed is at or below `tol`.
void require_immersion(const Knot& knot, double tol = kDefaultImmersionTol,
                       int grid_size = kDefaultValidationGrid);

/// Integral of |x'(t)| over one period. Throws ConvergenceError.
double curve_length(const Knot& knot, const QuadratureConfig& config = {});

}  // namespace kcrit
