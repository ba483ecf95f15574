#include "kcrit/veronese.hpp"

#include "kcrit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace kcrit {

namespace {

double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

// ell! / prod alpha_i! as a product of binomials, exact while it fits a double.
double multinomial(const MultiIndex& alpha) {
    double r = 1.0;
    int partial = 0;
    for (int a : alpha) {
        partial += a;
        r *= binomial(partial, a);
    }
    return r;
}

void enumerate(int n, int remaining, MultiIndex& current, std::vector<MultiIndex>& out) {
    const int slot = static_cast<int>(current.size());
    if (slot == n - 1) {
        current.push_back(remaining);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (int a = 0; a <= remaining; ++a) {
        current.push_back(a);
        enumerate(n, remaining - a, current, out);
        current.pop_back();
    }
}

// d^|dec| x^alpha / prod dx_i^{dec_i}, with dec_i in {0, 1, 2}.
double monomial_derivative(const MultiIndex& alpha, const Eigen::VectorXd& x, const int* dec) {
    double r = 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const int a = alpha[i];
        const int d = dec[i];
        if (a < d) return 0.0;
        for (int j = 0; j < d; ++j) r *= (a - j);
        r *= ipow(x[static_cast<Eigen::Index>(i)], a - d);
    }
    return r;
}

}  // namespace

std::int64_t sym_dim(int n, int degree) {
    if (n < 1 || degree < 0) throw SpecError("sym_dim: need n >= 1 and degree >= 0");
    std::int64_t r = 1;
    // C(n + degree - 1, degree) built incrementally stays integral at every step.
    for (int i = 1; i <= degree; ++i) r = r * (n - 1 + i) / i;
    return r;
}

std::vector<MultiIndex> enumerate_multi_indices(int n, int degree) {
    if (n < 1 || degree < 0) throw SpecError("multi-indices: need n >= 1 and degree >= 0");
    std::vector<MultiIndex> out;
    MultiIndex current;
    current.reserve(static_cast<std::size_t>(n));
    enumerate(n, degree, current, out);
    std::reverse(out.begin(), out.end());
    return out;
}

VeroneseChart::VeroneseChart(int n, int degree) : n_(n), degree_(degree) {
    if (n < 1) throw SpecError("veronese: ambient dimension must be at least 1");
    if (degree < 1) throw SpecError("veronese: degree must be at least 1");
    indices_ = enumerate_multi_indices(n, degree);
    weights_.reserve(indices_.size());
    for (const auto& alpha : indices_) weights_.push_back(std::sqrt(multinomial(alpha)));
}

void VeroneseChart::check_dim(const Eigen::VectorXd& v, const char* what) const {
    if (v.size() != n_) {
        throw SpecError(std::string("veronese: ") + what + " has dimension " + std::to_string(v.size()) +
                        ", chart expects " + std::to_string(n_));
    }
}

Eigen::VectorXd VeroneseChart::eval(const Eigen::VectorXd& x) const {
    check_dim(x, "point");
    const std::vector<int> none(static_cast<std::size_t>(n_), 0);
    Eigen::VectorXd out(dim());
    for (int j = 0; j < dim(); ++j) {
        out[j] = weights_[j] * monomial_derivative(indices_[j], x, none.data());
    }
    return out;
}

Eigen::MatrixXd VeroneseChart::jacobian(const Eigen::VectorXd& x) const {
    check_dim(x, "point");
    Eigen::MatrixXd jac(dim(), n_);
    std::vector<int> dec(static_cast<std::size_t>(n_), 0);
    for (int j = 0; j < dim(); ++j) {
        for (int i = 0; i < n_; ++i) {
            dec[i] = 1;
            jac(j, i) = weights_[j] * monomial_derivative(indices_[j], x, dec.data());
            dec[i] = 0;
        }
    }
    return jac;
}

Eigen::VectorXd VeroneseChart::directional(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
    check_dim(u, "direction");
    return jacobian(x) * u;
}

Eigen::VectorXd VeroneseChart::second_directional(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                                  const Eigen::VectorXd& w) const {
    check_dim(x, "point");
    check_dim(u, "direction");
    check_dim(w, "direction");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
    std::vector<int> dec(static_cast<std::size_t>(n_), 0);
    for (int j = 0; j < dim(); ++j) {
        double acc = 0.0;
        for (int a = 0; a < n_; ++a) {
            for (int b = 0; b < n_; ++b) {
                const double weight = u[a] * w[b];
                if (weight == 0.0) continue;
                ++dec[a];
                ++dec[b];
                acc += weight * monomial_derivative(indices_[j], x, dec.data());
                --dec[a];
                --dec[b];
            }
        }
        out[j] = weights_[j] * acc;
    }
    return out;
}

Knot veronese_immersion(const VeroneseChart& chart, const Knot& knot, int validation_grid) {
    if (knot.ambient_dim() != chart.ambient_dim()) {
        throw SpecError("veronese_immersion: knot lives in R^" + std::to_string(knot.ambient_dim()) +
                        " but chart expects R^" + std::to_string(chart.ambient_dim()));
    }
    if (chart.degree() >= 2) {
        double min_norm = std::numeric_limits<double>::infinity();
        double max_norm = 0.0;
        double argmin = 0.0;
        for (int i = 0; i < validation_grid; ++i) {
            const double t = knot.period() * i / validation_grid;
            const double r = knot.position(t).norm();
            if (r < min_norm) {
                min_norm = r;
                argmin = t;
            }
            max_norm = std::max(max_norm, r);
        }
        if (!(min_norm > 1e-8 * max_norm)) {
            throw DegeneracyError("veronese_immersion: the knot passes through the origin near t = " +
                                  std::to_string(argmin));
        }
    }
    // V(x)' = DV(x) x', V(x)'' = D^2V(x)[x', x'] + DV(x) x''.
    return Knot(
        chart.dim(), knot.period(), [chart, knot](double t) { return chart.eval(knot.position(t)); },
        [chart, knot](double t) { return chart.directional(knot.position(t), knot.velocity(t)); },
        [chart, knot](double t) {
            const Eigen::VectorXd x = knot.position(t);
            const Eigen::VectorXd v = knot.velocity(t);
            return Eigen::VectorXd(chart.second_directional(x, v, v) +
                                   chart.directional(x, knot.acceleration(t)));
        });
}

Integral total_curvature_integral(const Knot& knot, const QuadratureConfig& config) {
    require_immersion(knot);
    auto integrand = [&knot](double t) {
        const Eigen::VectorXd v = knot.velocity(t);
        const Eigen::VectorXd a = knot.acceleration(t);
        const double speed2 = v.squaredNorm();
        // |T'| = |a - (a.v / |v|^2) v| / |v|
        const Eigen::VectorXd normal = a - (a.dot(v) / speed2) * v;
        return normal.norm() / std::sqrt(speed2);
    };
    return periodic_trapezoid(integrand, knot.period(), config);
}

double total_curvature(const Knot& knot, const QuadratureConfig& config) {
    return total_curvature_integral(knot, config).checked("total_curvature");
}

}  // namespace kcrit
