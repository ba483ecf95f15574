#include "kcrit/knot.hpp"

#include "kcrit/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace kcrit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_unit_circle_image(const Knot& knot) {
    if (knot.ambient_dim() != 2) return false;
    constexpr int samples = 256;
    for (int i = 0; i < samples; ++i) {
        const double t = knot.period() * i / samples;
        if (std::abs(knot.position(t).norm() - 1.0) > 1e-12) return false;
    }
    return true;
}

bool is_orthogonal(const Eigen::MatrixXd& m) {
    const auto id = Eigen::MatrixXd::Identity(m.rows(), m.cols());
    return (m.transpose() * m - id).cwiseAbs().maxCoeff() < 1e-12;
}

}  // namespace

Knot::Knot(int ambient_dim, double period, Evaluator position, Evaluator velocity,
           Evaluator acceleration, KnotShape shape)
    : dim_(ambient_dim),
      period_(period),
      position_(std::make_shared<const Evaluator>(std::move(position))),
      velocity_(std::make_shared<const Evaluator>(std::move(velocity))),
      acceleration_(std::make_shared<const Evaluator>(std::move(acceleration))),
      shape_(shape) {
    if (dim_ < 1) throw SpecError("knot: ambient dimension must be positive");
    if (!(period_ > 0.0) || !std::isfinite(period_)) throw SpecError("knot: period must be positive");
}

Knot knot_from_fourier(const FourierKnotSpec& spec) {
    if (spec.dim < 1) throw SpecError("fourier knot: dim must be positive");
    if (static_cast<int>(spec.coords.size()) != spec.dim) {
        throw SpecError("fourier knot: expected " + std::to_string(spec.dim) +
                        " coordinate series, got " + std::to_string(spec.coords.size()));
    }
    for (std::size_t c = 0; c < spec.coords.size(); ++c) {
        const auto& series = spec.coords[c];
        if (series.empty()) {
            throw SpecError("fourier knot: coordinate " + std::to_string(c) + " has an empty series");
        }
        bool any_nonzero = false;
        for (const auto& h : series) {
            if (h.k < 0) throw SpecError("fourier knot: negative frequency");
            if (!std::isfinite(h.a) || !std::isfinite(h.b)) {
                throw SpecError("fourier knot: non-finite coefficient");
            }
            any_nonzero = any_nonzero || h.a != 0.0 || (h.k != 0 && h.b != 0.0);
        }
        if (!any_nonzero) {
            throw SpecError("fourier knot: coordinate " + std::to_string(c) + " has only zero coefficients");
        }
    }

    auto coords = std::make_shared<const std::vector<std::vector<Harmonic>>>(spec.coords);
    const int dim = spec.dim;

    // order selects x, x' or x''; d^m/dt^m of a cos kt + b sin kt.
    auto make = [coords, dim](int order) {
        return [coords, dim, order](double t) {
            Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
            for (int c = 0; c < dim; ++c) {
                double acc = 0.0;
                for (const auto& h : (*coords)[c]) {
                    const double k = h.k;
                    const double ck = std::cos(k * t);
                    const double sk = std::sin(k * t);
                    switch (order) {
                        case 0: acc += h.a * ck + h.b * sk; break;
                        case 1: acc += k * (-h.a * sk + h.b * ck); break;
                        default: acc += -k * k * (h.a * ck + h.b * sk); break;
                    }
                }
                out[c] = acc;
            }
            return out;
        };
    };

    Knot knot(dim, kTwoPi, make(0), make(1), make(2));
    if (is_unit_circle_image(knot)) {
        return Knot(dim, kTwoPi, make(0), make(1), make(2), KnotShape::unit_circle);
    }
    return knot;
}

FourierKnotSpec parse_fourier_spec(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SpecError(std::string("fourier knot: invalid JSON: ") + e.what());
    }
    FourierKnotSpec spec;
    try {
        spec.dim = doc.at("dim").get<int>();
        for (const auto& series : doc.at("coords")) {
            std::vector<Harmonic> harmonics;
            for (const auto& term : series) {
                Harmonic h;
                h.k = term.at("k").get<int>();
                h.a = term.value("a", 0.0);
                h.b = term.value("b", 0.0);
                harmonics.push_back(h);
            }
            spec.coords.push_back(std::move(harmonics));
        }
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(std::string("fourier knot: malformed document: ") + e.what());
    }
    return spec;
}

Knot builtin_circle(const Eigen::Vector2d& center, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw SpecError("circle: radius must be positive");
    const Eigen::VectorXd c = center;
    const KnotShape shape =
        (center.isZero(0.0) && radius == 1.0) ? KnotShape::unit_circle : KnotShape::circle;
    return Knot(
        2, kTwoPi,
        [c, radius](double t) {
            Eigen::VectorXd x(2);
            x << c[0] + radius * std::cos(t), c[1] + radius * std::sin(t);
            return x;
        },
        [radius](double t) {
            Eigen::VectorXd v(2);
            v << -radius * std::sin(t), radius * std::cos(t);
            return v;
        },
        [radius](double t) {
            Eigen::VectorXd a(2);
            a << -radius * std::cos(t), -radius * std::sin(t);
            return a;
        },
        shape);
}

Knot builtin_ellipse(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw SpecError("ellipse: semi-axes must be positive");
    FourierKnotSpec spec{2, {{{1, a, 0.0}}, {{1, 0.0, b}}}};
    return knot_from_fourier(spec);
}

FourierKnotSpec trefoil_fourier_spec() {
    // (2 + cos 3t) cos 2t = 2 cos 2t + (cos t + cos 5t) / 2
    // (2 + cos 3t) sin 2t = 2 sin 2t + (sin 5t - sin t) / 2
    return FourierKnotSpec{
        3,
        {
            {{1, 0.5, 0.0}, {2, 2.0, 0.0}, {5, 0.5, 0.0}},
            {{1, 0.0, -0.5}, {2, 0.0, 2.0}, {5, 0.0, 0.5}},
            {{3, 0.0, 1.0}},
        }};
}

Knot builtin_trefoil() { return knot_from_fourier(trefoil_fourier_spec()); }

Knot reparametrize(const Knot& knot, double shift, int speed) {
    if (speed < 1) throw SpecError("reparametrize: speed must be a positive integer");
    const double k = speed;
    return Knot(
        knot.ambient_dim(), knot.period() / k,
        [knot, shift, k](double s) { return knot.position(k * s + shift); },
        [knot, shift, k](double s) { return Eigen::VectorXd(k * knot.velocity(k * s + shift)); },
        [knot, shift, k](double s) { return Eigen::VectorXd(k * k * knot.acceleration(k * s + shift)); },
        knot.shape());
}

Knot transform_knot(const Knot& knot, const Eigen::MatrixXd& linear_map) {
    if (linear_map.cols() != knot.ambient_dim() || linear_map.rows() != linear_map.cols()) {
        throw SpecError("transform_knot: map must be square of the ambient dimension");
    }
    const KnotShape shape = is_orthogonal(linear_map) ? knot.shape() : KnotShape::general;
    const Eigen::MatrixXd m = linear_map;
    return Knot(
        knot.ambient_dim(), knot.period(),
        [knot, m](double t) { return Eigen::VectorXd(m * knot.position(t)); },
        [knot, m](double t) { return Eigen::VectorXd(m * knot.velocity(t)); },
        [knot, m](double t) { return Eigen::VectorXd(m * knot.acceleration(t)); }, shape);
}

SpeedReport validate_immersion(const Knot& knot, int grid_size) {
    if (grid_size < 16) throw SpecError("validate_immersion: grid_size must be at least 16");
    SpeedReport report{std::numeric_limits<double>::infinity(), 0.0};
    for (int i = 0; i < grid_size; ++i) {
        const double t = knot.period() * i / grid_size;
        const double speed = knot.velocity(t).norm();
        if (speed < report.min_speed) report = {speed, t};
    }
    return report;
}

void require_immersion(const Knot& knot, double tol, int grid_size) {
    const auto report = validate_immersion(knot, grid_size);
    if (!(report.min_speed > tol)) {
        throw DegeneracyError("curve is not immersed: |x'(t)| = " + std::to_string(report.min_speed) +
                              " at t = " + std::to_string(report.argmin));
    }
}

double curve_length(const Knot& knot, const QuadratureConfig& config) {
    return periodic_trapezoid([&knot](double t) { return knot.velocity(t).norm(); }, knot.period(),
                              config)
        .checked("curve_length");
}

}  // namespace kcrit
