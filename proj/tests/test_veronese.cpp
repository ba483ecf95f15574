#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kcrit/errors.hpp"
#include "kcrit/veronese.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace kcrit;
using namespace kcrit::testing;

namespace {

Eigen::VectorXd point(std::initializer_list<double> xs) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

Eigen::VectorXd random_vector(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = normal(rng);
    return v;
}

const Knot& unit_circle() {
    static const Knot knot = builtin_circle(Eigen::Vector2d(0, 0), 1.0);
    return knot;
}

}  // namespace

TEST_CASE("sym_dim") {
    for (int ell = 1; ell <= 10; ++ell) CHECK(sym_dim(2, ell) == ell + 1);
    CHECK(sym_dim(3, 2) == 6);
    CHECK(sym_dim(3, 5) == 21);
    // The enumeration agrees with the binomial count.
    for (int n = 1; n <= 5; ++n)
        for (int ell = 1; ell <= 6; ++ell)
            CHECK(static_cast<std::int64_t>(enumerate_multi_indices(n, ell).size()) == sym_dim(n, ell));
}

TEST_CASE("multi-index order is descending lexicographic") {
    const auto idx = enumerate_multi_indices(2, 2);
    REQUIRE(idx.size() == 3);
    CHECK(idx[0] == MultiIndex{2, 0});
    CHECK(idx[1] == MultiIndex{1, 1});
    CHECK(idx[2] == MultiIndex{0, 2});
    const auto idx3 = enumerate_multi_indices(3, 2);
    CHECK(idx3.front() == MultiIndex{2, 0, 0});
    CHECK(idx3.back() == MultiIndex{0, 0, 2});
    for (std::size_t i = 1; i < idx3.size(); ++i) CHECK(idx3[i] < idx3[i - 1]);
}

TEST_CASE("degree-2 chart on the circle") {
    const VeroneseChart chart(2, 2);
    CHECK(chart.eval(point({0, 1})).isApprox(point({0, 0, 1})));
    for (double theta : {0.0, 0.4, 1.3, 2.9, 5.5}) {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const Eigen::VectorXd v = chart.eval(point({c, s}));
        CHECK(v.isApprox(point({c * c, std::sqrt(2.0) * c * s, s * s}), 1e-15));
        CHECK(v.squaredNorm() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(v[0] + v[2] == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("chart norm identity |V(x)| = |x|^ell") {
    std::mt19937_64 rng(3);
    for (int n = 2; n <= 4; ++n) {
        for (int ell = 1; ell <= 6; ++ell) {
            const VeroneseChart chart(n, ell);
            for (int i = 0; i < 100; ++i) {
                const Eigen::VectorXd x = random_vector(n, rng);
                const double want = std::pow(x.norm(), ell);
                CHECK(std::abs(chart.eval(x).norm() - want) < 1e-10 * std::max(1.0, want));
            }
        }
    }
}

TEST_CASE("directional derivative") {
    const VeroneseChart linear(3, 1);
    const Eigen::VectorXd u = point({0.3, -1.2, 2.0});
    CHECK(linear.directional(point({1, 2, 3}), u).isApprox(u));

    for (int ell = 1; ell <= 8; ++ell) {
        const VeroneseChart chart(2, ell);
        const Eigen::VectorXd d = chart.directional(point({1, 0}), point({0, 1}));
        for (int j = 0; j < chart.dim(); ++j) {
            if (chart.indices()[j] == MultiIndex{ell - 1, 1}) {
                CHECK(d[j] == doctest::Approx(std::sqrt(static_cast<double>(ell))));
            } else {
                CHECK(d[j] == 0.0);
            }
        }
    }

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 3;
        const VeroneseChart chart(n, 1 + trial % 5);
        const Eigen::VectorXd x = random_vector(n, rng);
        const Eigen::VectorXd dir = random_vector(n, rng);
        const Eigen::VectorXd w = random_vector(n, rng);
        const auto fd = central_difference([&](double t) { return chart.eval(x + t * dir); }, 0.0);
        CHECK(relative_error(chart.directional(x, dir), fd) < 1e-7);
        const auto fd2 = central_difference([&](double t) { return chart.directional(x + t * w, dir); }, 0.0);
        CHECK(relative_error(chart.second_directional(x, dir, w), fd2) < 1e-6);
    }
}

TEST_CASE("dimension mismatches are rejected") {
    const VeroneseChart chart(3, 2);
    CHECK_THROWS_AS(chart.eval(point({1, 2})), SpecError);
    CHECK_THROWS_AS(chart.directional(point({1, 2, 3}), point({1, 2})), SpecError);
    CHECK_THROWS_AS(VeroneseChart(2, 0), SpecError);
    CHECK_THROWS_AS(veronese_immersion(chart, unit_circle()), SpecError);
}

TEST_CASE("veronese immersion of the unit circle") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unif(0.0, kTwoPi);
    for (int ell = 1; ell <= 8; ++ell) {
        CAPTURE(ell);
        const Knot immersed = veronese_immersion(VeroneseChart(2, ell), unit_circle());
        for (int i = 0; i < 100; ++i) {
            const double theta = unif(rng);
            CHECK(std::abs(immersed.velocity(theta).norm() - std::sqrt(ell)) < 1e-10);
            const double want = 3.0 * ell * ell - 2.0 * ell;
            CHECK(std::abs(immersed.acceleration(theta).squaredNorm() - want) < 1e-9 * want);
        }
        CHECK(std::abs(curve_length(immersed) - kTwoPi * std::sqrt(ell)) < 1e-8);
    }
    const Knot fourth = veronese_immersion(VeroneseChart(2, 4), unit_circle());
    CHECK(validate_immersion(fourth, 4096).min_speed == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("degree-2 image is a doubly covered circle of radius 1/sqrt2") {
    const Knot immersed = veronese_immersion(VeroneseChart(2, 2), unit_circle());
    const Eigen::VectorXd center = point({0.5, 0.0, 0.5});
    for (int i = 0; i < 1000; ++i) {
        const double theta = kTwoPi * i / 1000.0;
        const Eigen::VectorXd p = immersed.position(theta);
        CHECK(std::abs(p.squaredNorm() - 1.0) < 1e-12);
        CHECK(std::abs(p[0] + p[2] - 1.0) < 1e-12);
        CHECK(std::abs((p - center).norm() - 1.0 / std::sqrt(2.0)) < 1e-12);
        CHECK((immersed.position(theta + kPi) - p).norm() < 1e-12);
    }
}

TEST_CASE("immersion requires the origin off the knot") {
    const Knot through_origin = builtin_circle(Eigen::Vector2d(1, 0), 1.0);
    CHECK_THROWS_AS(veronese_immersion(VeroneseChart(2, 2), through_origin), DegeneracyError);
    CHECK_NOTHROW(veronese_immersion(VeroneseChart(2, 1), through_origin));
}

TEST_CASE("total curvature") {
    CHECK(total_curvature(unit_circle()) == doctest::Approx(kTwoPi).epsilon(1e-12));
    const Knot fifth = veronese_immersion(VeroneseChart(2, 5), unit_circle());
    CHECK(total_curvature(fifth) / kPi == doctest::Approx(2.0 * std::sqrt(13.0)).epsilon(1e-10));

    const Knot offset = veronese_immersion(VeroneseChart(2, 2), builtin_circle(Eigen::Vector2d(3, 0), 1.0));
    const double mu = total_curvature(offset) / kPi;
    CHECK(std::abs(mu - 2.065) < 0.005);
    CHECK(mu < 4.0);

    const Knot astroid = knot_from_fourier(
        FourierKnotSpec{2, {{{1, 0.75, 0.0}, {3, 0.25, 0.0}}, {{1, 0.0, 0.75}, {3, 0.0, -0.25}}}});
    CHECK_THROWS_AS(total_curvature(astroid), DegeneracyError);
}

TEST_CASE("Fenchel bound on test curves") {
    std::vector<Knot> curves;
    for (const auto& [name, knot] : sample_knots()) curves.push_back(knot);
    curves.push_back(veronese_immersion(VeroneseChart(2, 3), builtin_circle(Eigen::Vector2d(3, 0), 1.0)));
    curves.push_back(veronese_immersion(VeroneseChart(3, 2), builtin_trefoil()));
    for (const auto& curve : curves) CHECK(total_curvature(curve) >= kTwoPi - 1e-6);
}

TEST_CASE("total curvature of the Veronese immersion is rotation invariant") {
    std::mt19937_64 rng(21);
    const Knot trefoil = builtin_trefoil();
    const Knot rotated = transform_knot(trefoil, random_rotation(3, rng));
    for (int ell = 1; ell <= 3; ++ell) {
        const VeroneseChart chart(3, ell);
        const double a = total_curvature(veronese_immersion(chart, trefoil));
        const double b = total_curvature(veronese_immersion(chart, rotated));
        CHECK(std::abs(a - b) < 1e-8 * a);
    }
}

TEST_CASE("offset circles flatten towards a planar convex curve") {
    // Exploratory sweep: tau/pi decreases with the offset and stays above 2.
    double previous = 1e300;
    for (double d : {3.0, 6.0, 12.0, 30.0, 120.0}) {
        CAPTURE(d);
        const Knot immersed = veronese_immersion(VeroneseChart(2, 2), builtin_circle(Eigen::Vector2d(d, 0), 1.0));
        const double mu = total_curvature(immersed) / kPi;
        CHECK(mu < previous);
        CHECK(mu >= 2.0 - 1e-6);
        previous = mu;
    }
}
