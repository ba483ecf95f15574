#include "kcrit/family.hpp"

#include "kcrit/errors.hpp"
#include "kcrit/veronese.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace kcrit {

namespace {

class HomogeneousImpl final : public detail::FamilyImpl {
public:
    HomogeneousImpl(int n, int degree) : chart_(n, degree) {}

    int dim() const override { return chart_.dim(); }
    FamilyKind kind() const override { return FamilyKind::homogeneous; }
    int ambient_dim() const override { return chart_.ambient_dim(); }
    int circle_degree() const override { return chart_.degree(); }
    std::string describe() const override {
        return "veronese:n=" + std::to_string(chart_.ambient_dim()) + ",ell=" + std::to_string(chart_.degree());
    }

    void check_applicable(const Knot& knot) const override {
        if (knot.ambient_dim() != chart_.ambient_dim()) {
            throw SpecError("family " + describe() + " needs a knot in R^" +
                            std::to_string(chart_.ambient_dim()) + ", got R^" +
                            std::to_string(knot.ambient_dim()));
        }
    }

    RestrictedJet restrict_to(const Knot& knot, double t) const override {
        const Eigen::VectorXd x = knot.position(t);
        const Eigen::VectorXd v = knot.velocity(t);
        const Eigen::MatrixXd jac = chart_.jacobian(x);
        RestrictedJet jet;
        jet.g = chart_.eval(x);
        jet.dg = jac * v;
        jet.d2g = chart_.second_directional(x, v, v) + jac * knot.acceleration(t);
        return jet;
    }

private:
    VeroneseChart chart_;
};

class TrigImpl final : public detail::FamilyImpl {
public:
    explicit TrigImpl(int n) : n_(n) {}

    int dim() const override { return 2 * n_ + 1; }
    FamilyKind kind() const override { return FamilyKind::trig; }
    int ambient_dim() const override { return 0; }
    int circle_degree() const override { return n_; }
    std::string describe() const override { return "trig:n=" + std::to_string(n_); }

    void check_applicable(const Knot& knot) const override {
        if (knot.shape() != KnotShape::unit_circle) {
            throw SpecError("trigonometric families are defined on the unit circle only");
        }
    }

    RestrictedJet restrict_to(const Knot& knot, double t) const override {
        check_applicable(knot);
        // The angle along a parametrization of the unit circle:
        // theta' = x y' - y x', theta'' = x y'' - y x''.
        const Eigen::VectorXd p = knot.position(t);
        const Eigen::VectorXd v = knot.velocity(t);
        const Eigen::VectorXd a = knot.acceleration(t);
        const double theta = std::atan2(p[1], p[0]);
        const double w = p[0] * v[1] - p[1] * v[0];
        const double w_dot = p[0] * a[1] - p[1] * a[0];

        RestrictedJet jet;
        jet.g.resize(dim());
        jet.dg.resize(dim());
        jet.d2g.resize(dim());
        jet.g[0] = 1.0;
        jet.dg[0] = 0.0;
        jet.d2g[0] = 0.0;
        for (int k = 1; k <= n_; ++k) {
            const double c = std::numbers::sqrt2 * std::cos(k * theta);
            const double s = std::numbers::sqrt2 * std::sin(k * theta);
            const int ic = 2 * k - 1;
            const int is = 2 * k;
            jet.g[ic] = c;
            jet.g[is] = s;
            // d/dtheta: cos -> -k sin, sin -> k cos; d^2/dtheta^2 = -k^2.
            jet.dg[ic] = -k * s * w;
            jet.dg[is] = k * c * w;
            jet.d2g[ic] = -k * s * w_dot - k * k * c * w * w;
            jet.d2g[is] = k * c * w_dot - k * k * s * w * w;
        }
        return jet;
    }

private:
    int n_;
};

class CustomImpl final : public detail::FamilyImpl {
public:
    CustomImpl(int ambient_dim, AmbientBasis basis, const Eigen::MatrixXd& gram, std::string name)
        : n_(ambient_dim), basis_(std::move(basis)), name_(std::move(name)) {
        if (n_ < 1) throw SpecError("custom family: ambient dimension must be positive");
        if (!basis_) throw SpecError("custom family: missing basis evaluator");
        if (gram.rows() != gram.cols() || gram.rows() < 1) {
            throw SpecError("custom family: Gram matrix must be square and non-empty");
        }
        const double scale = gram.cwiseAbs().maxCoeff();
        if ((gram - gram.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
            throw DegeneracyError("custom family: Gram matrix is not symmetric");
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
        const auto& ev = eig.eigenvalues();
        if (!(ev.minCoeff() > 1e-10 * ev.maxCoeff()) || !(ev.maxCoeff() > 0.0)) {
            throw DegeneracyError("custom family: Gram matrix is not positive definite");
        }
        // G = L L^T; L^{-1} b is orthonormal when b has Gram matrix G.
        factor_ = Eigen::LLT<Eigen::MatrixXd>(gram).matrixL();
    }

    int dim() const override { return static_cast<int>(factor_.rows()); }
    FamilyKind kind() const override { return FamilyKind::custom; }
    int ambient_dim() const override { return n_; }
    int circle_degree() const override { return 0; }
    std::string describe() const override { return name_; }

    void check_applicable(const Knot& knot) const override {
        if (knot.ambient_dim() != n_) {
            throw SpecError("custom family " + name_ + " needs a knot in R^" + std::to_string(n_));
        }
    }

    RestrictedJet restrict_to(const Knot& knot, double t) const override {
        const Eigen::VectorXd x = knot.position(t);
        const Eigen::VectorXd v = knot.velocity(t);
        const Eigen::VectorXd a = knot.acceleration(t);
        const AmbientJet raw = basis_(x);
        const int N = dim();
        if (raw.values.size() != N || raw.gradients.rows() != N || raw.gradients.cols() != n_ ||
            static_cast<int>(raw.hessians.size()) != N) {
            throw SpecError("custom family " + name_ + ": basis evaluator returned inconsistent sizes");
        }
        Eigen::VectorXd d2(N);
        for (int i = 0; i < N; ++i) d2[i] = v.dot(raw.hessians[i] * v);
        d2 += raw.gradients * a;

        const auto lower = factor_.triangularView<Eigen::Lower>();
        RestrictedJet jet;
        jet.g = lower.solve(raw.values);
        jet.dg = lower.solve(Eigen::VectorXd(raw.gradients * v));
        jet.d2g = lower.solve(d2);
        return jet;
    }

private:
    int n_;
    AmbientBasis basis_;
    std::string name_;
    Eigen::MatrixXd factor_;
};

}  // namespace

FunctionFamily::FunctionFamily(std::shared_ptr<const detail::FamilyImpl> impl) : impl_(std::move(impl)) {
    if (!impl_) throw SpecError("function family: null implementation");
}

int FunctionFamily::dim() const { return impl_->dim(); }
FamilyKind FunctionFamily::kind() const { return impl_->kind(); }
int FunctionFamily::ambient_dim() const { return impl_->ambient_dim(); }
int FunctionFamily::circle_degree() const { return impl_->circle_degree(); }
std::string FunctionFamily::describe() const { return impl_->describe(); }
void FunctionFamily::check_applicable(const Knot& knot) const { impl_->check_applicable(knot); }

RestrictedJet FunctionFamily::restrict_to(const Knot& knot, double t) const {
    return impl_->restrict_to(knot, t);
}

FunctionFamily homogeneous_family(int n, int degree) {
    if (n < 2) throw SpecError("homogeneous family: ambient dimension must be at least 2");
    if (degree < 1) throw SpecError("homogeneous family: degree must be at least 1");
    return FunctionFamily(std::make_shared<const HomogeneousImpl>(n, degree));
}

FunctionFamily trig_family(int n) {
    if (n < 1) throw SpecError("trig family: degree must be at least 1");
    return FunctionFamily(std::make_shared<const TrigImpl>(n));
}

Eigen::VectorXd trig_basis_values(int n, double theta) {
    Eigen::VectorXd out(2 * n + 1);
    out[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        out[2 * k - 1] = std::numbers::sqrt2 * std::cos(k * theta);
        out[2 * k] = std::numbers::sqrt2 * std::sin(k * theta);
    }
    return out;
}

FunctionFamily custom_family(int ambient_dim, AmbientBasis basis, const Eigen::MatrixXd& gram,
                             std::string name) {
    return FunctionFamily(
        std::make_shared<const CustomImpl>(ambient_dim, std::move(basis), gram, std::move(name)));
}

NondegeneracyReport check_nondegeneracy(const FunctionFamily& family, const Knot& knot, int grid_size) {
    if (grid_size < 64) throw SpecError("check_nondegeneracy: grid_size must be at least 64");
    family.check_applicable(knot);
    NondegeneracyReport report{std::numeric_limits<double>::infinity(), 0.0, 0.0};
    for (int i = 0; i < grid_size; ++i) {
        const double t = knot.period() * i / grid_size;
        const double norm = family.restrict_to(knot, t).dg.norm();
        if (norm < report.min_norm) {
            report.min_norm = norm;
            report.argmin = t;
        }
        report.max_norm = std::max(report.max_norm, norm);
    }
    return report;
}

void require_nondegenerate(const FunctionFamily& family, const Knot& knot, int grid_size, double rel_tol) {
    const auto report = check_nondegeneracy(family, knot, grid_size);
    if (!report.admissible(rel_tol)) {
        throw DegeneracyError("family " + family.describe() + " is degenerate on the knot: |dg| = " +
                              std::to_string(report.min_norm) + " at t = " + std::to_string(report.argmin) +
                              " (the knot point is critical for every function)");
    }
}

}  // namespace kcrit
