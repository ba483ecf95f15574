#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kcrit/closed_forms.hpp"
#include "kcrit/errors.hpp"
#include "kcrit/monte_carlo.hpp"
#include "test_support.hpp"

#include <cmath>
#include <sstream>

using namespace kcrit;
using namespace kcrit::testing;

namespace {

const Knot& unit_circle() {
    static const Knot knot = builtin_circle(Eigen::Vector2d(0, 0), 1.0);
    return knot;
}

double angular_distance(double a, double b) {
    const double d = std::fmod(std::abs(a - b), kTwoPi);
    return std::min(d, kTwoPi - d);
}

void check_parity(const McReport& report) {
    for (const auto& r : report.samples) {
        CHECK(r.count >= 2);
        CHECK(r.count % 2 == 0);
    }
}

}  // namespace

TEST_CASE("sample_unit_sphere") {
    Rng rng(1);
    int positive = 0;
    for (int i = 0; i < 10000; ++i) {
        const Eigen::VectorXd v = sample_unit_sphere(1, rng);
        CHECK(std::abs(std::abs(v[0]) - 1.0) == 0.0);
        positive += v[0] > 0 ? 1 : 0;
    }
    CHECK(std::abs(positive - 5000) < 200);

    Rng rng3(2);
    const int draws = 100000;
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (int i = 0; i < draws; ++i) {
        const Eigen::VectorXd v = sample_unit_sphere(3, rng3);
        CHECK(std::abs(v.norm() - 1.0) < 1e-15);
        mean += v;
    }
    mean /= draws;
    CHECK(mean.cwiseAbs().maxCoeff() < 4.0 / std::sqrt(static_cast<double>(draws)));

    Rng a(77);
    Rng b(77);
    CHECK(sample_unit_sphere(9, a) == sample_unit_sphere(9, b));
    CHECK_THROWS_AS(sample_unit_sphere(0, a), SpecError);
}

TEST_CASE("per-sample seeds are distinct and order independent") {
    CHECK(sample_seed(42, 0) != sample_seed(42, 1));
    CHECK(sample_seed(42, 5) != sample_seed(43, 5));
    CHECK(sample_seed(42, 5) == sample_seed(42, 5));
}

TEST_CASE("sqrt2 cos 2t has four critical points at the quarter turns") {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(5);
    c[3] = 1.0;
    const CriticalPoints cp = count_critical_points(trig_family(2), unit_circle(), c);
    CHECK(cp.morse);
    REQUIRE(cp.count == 4);
    for (double expected : {0.0, kPi / 2, kPi, 3 * kPi / 2}) {
        double best = 1e9;
        for (double r : cp.roots) best = std::min(best, angular_distance(r, expected));
        CHECK(best < 1e-10);
    }
}

TEST_CASE("height function on the circle has two critical points") {
    const CriticalPoints cp = count_critical_points(homogeneous_family(2, 1), unit_circle(), Eigen::Vector2d(1, 0));
    CHECK(cp.count == 2);
    CHECK(cp.morse);
}

TEST_CASE("the degree-4 sample trigonometric polynomial has six critical points") {
    const double a[] = {1.2, -3.17, 1.53, 1.0};
    const double b[] = {2.35, 2.71, -4.17, -1.15};
    Eigen::VectorXd c = Eigen::VectorXd::Zero(9);
    for (int k = 1; k <= 4; ++k) {
        c[2 * k - 1] = a[k - 1] / std::sqrt(2.0);
        c[2 * k] = b[k - 1] / std::sqrt(2.0);
    }
    c.normalize();
    const CriticalPoints cp = count_critical_points(trig_family(4), unit_circle(), c);
    CHECK(cp.morse);
    CHECK(cp.count == 6);
}

TEST_CASE("a degenerate critical point is flagged") {
    // cos t + cos(2t)/4 has f'' = -cos t - cos 2t = 0 together with f' = 0 at t = pi.
    Eigen::VectorXd c = Eigen::VectorXd::Zero(5);
    c[1] = 1.0;
    c[3] = 0.25;
    McConfig config;
    config.scan_grid = 1000;
    const CriticalPoints cp = count_critical_points(trig_family(2), unit_circle(), c, config);
    CHECK_FALSE(cp.morse);
}

TEST_CASE("scan grid validation") {
    McConfig config;
    config.scan_grid = 16;
    CHECK_THROWS_AS(CriticalPointCounter(trig_family(4), unit_circle(), config), SpecError);
    CHECK(CriticalPointCounter(trig_family(4), unit_circle()).scan_grid() == 256);
    CHECK(CriticalPointCounter(homogeneous_family(2, 3), builtin_circle(Eigen::Vector2d(3, 0), 1.0)).scan_grid() ==
          192);
    CHECK(CriticalPointCounter(homogeneous_family(3, 2), builtin_trefoil()).scan_grid() == 4096);
}

TEST_CASE("monte carlo agrees with the closed forms") {
    McConfig config;
    config.samples = 20000;
    config.seed = 42;

    const McReport veronese = mc_expectation(homogeneous_family(2, 2), unit_circle(), config);
    CHECK(veronese.effective_samples == 20000);
    CHECK(std::abs(veronese.mean - 4.0) <= 3.0 * veronese.standard_error);
    check_parity(veronese);

    const McReport trig = mc_expectation(trig_family(3), unit_circle(), config);
    CHECK(std::abs(trig.mean - 2.0 * std::sqrt(7.0)) <= 3.0 * trig.standard_error);
    CHECK(trig.discard_rate() < 0.001);
    check_parity(trig);
}

TEST_CASE("reports are deterministic across runs and worker counts") {
    McConfig config;
    config.samples = 3000;
    config.seed = 5;
    const FunctionFamily family = homogeneous_family(3, 2);
    const Knot knot = builtin_trefoil();
    const McReport serial = mc_expectation(family, knot, config);
    config.workers = 3;
    const McReport parallel = mc_expectation(family, knot, config);
    CHECK(serial.mean == parallel.mean);
    CHECK(serial.standard_error == parallel.standard_error);
    std::ostringstream a;
    std::ostringstream b;
    write_samples_csv(serial, a);
    write_samples_csv(parallel, b);
    CHECK(a.str() == b.str());
    check_parity(serial);

    McConfig single;
    single.samples = 1;
    single.seed = 123;
    const McReport once = mc_expectation(trig_family(4), unit_circle(), single);
    const McReport again = mc_expectation(trig_family(4), unit_circle(), single);
    CHECK(once.samples[0].count == again.samples[0].count);
    CHECK(once.standard_error == 0.0);
}

TEST_CASE("doubling the scan grid changes no count") {
    std::vector<std::pair<FunctionFamily, Knot>> pairs = {
        {trig_family(4), unit_circle()},
        {homogeneous_family(2, 2), builtin_circle(Eigen::Vector2d(3, 0), 1.0)},
        {homogeneous_family(3, 2), builtin_trefoil()},
    };
    for (const auto& [family, knot] : pairs) {
        CAPTURE(family.describe());
        McConfig config;
        config.samples = 200;
        const McReport base = mc_expectation(family, knot, config);
        config.scan_grid = 2 * base.scan_grid;
        const McReport fine = mc_expectation(family, knot, config);
        for (std::size_t i = 0; i < base.samples.size(); ++i) CHECK(base.samples[i].count == fine.samples[i].count);
    }
}

TEST_CASE("a suspicious discard rate is an error") {
    McConfig config;
    config.samples = 200;
    config.morse_tol = 0.5;
    CHECK_THROWS_AS(mc_expectation(trig_family(4), unit_circle(), config), ConvergenceError);
    CHECK_THROWS_AS(mc_expectation(homogeneous_family(2, 2), builtin_circle(Eigen::Vector2d(1, 0), 1.0)),
                    DegeneracyError);
}

TEST_CASE("csv layout") {
    McConfig config;
    config.samples = 3;
    const McReport report = mc_expectation(trig_family(1), unit_circle(), config);
    std::ostringstream out;
    write_samples_csv(report, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "index,seed,count,discarded_attempts");
    int rows = 0;
    while (std::getline(in, line)) {
        CHECK(line.rfind(std::to_string(rows) + "," + std::to_string(sample_seed(42, rows)) + ",2,0", 0) == 0);
        ++rows;
    }
    CHECK(rows == 3);
}
