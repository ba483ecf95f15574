#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "kcrit/family.hpp"
#include "kcrit/knot.hpp"

namespace kcrit {

using Rng = std::mt19937_64;

/// Uniform point on the unit sphere of R^N: a standard normal vector,
/// normalized; redrawn when its norm is below 1e-8.
Eigen::VectorXd sample_unit_sphere(int N, Rng& rng);

/// splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of sample `index` under `master`; independent of evaluation order.
std::uint64_t sample_seed(std::uint64_t master, std::uint64_t index);

struct McConfig {
    std::int64_t samples = 20000;
    std::uint64_t seed = 42;
    /// 0 selects the default: 64 * degree on circles, 4096 otherwise.
    int scan_grid = 0;
    double bisection_tol = 1e-13;
    int max_bisection_iterations = 40;
    /// A root counts as nondegenerate when |h'| exceeds this fraction of max |h'|.
    double morse_tol = 1e-7;
    /// Redraws allowed after a non-Morse draw.
    int max_redraws = 3;
    double max_discard_rate = 0.01;
    /// 0 uses the hardware concurrency.
    int workers = 1;
    int validation_grid = kDefaultValidationGrid;
};

/// Scan grid used for a family on a knot when the config does not fix one.
int default_scan_grid(const FunctionFamily& family, const Knot& knot);

struct CriticalPoints {
    int count = 0;
    std::vector<double> roots;
    /// False when some root had |h'| below the Morse tolerance.
    bool morse = true;
};

/// Finds the zeros of h(t) = c . dg(t) for many coefficient vectors c on a
/// fixed (family, knot) pair. The derivative data on the scan grid is
/// computed once at construction. Immutable; count() may be called from
/// several threads.
class CriticalPointCounter {
public:
    CriticalPointCounter(FunctionFamily family, Knot knot, const McConfig& config = {});

    int scan_grid() const { return grid_; }
    CriticalPoints count(const Eigen::VectorXd& coeffs) const;

private:
    double h(const Eigen::VectorXd& coeffs, double t) const;
    double bisect(const Eigen::VectorXd& coeffs, double lo, double hi, double h_lo) const;

    FunctionFamily family_;
    Knot knot_;
    McConfig config_;
    int grid_;
    Eigen::MatrixXd dg_grid_;   // grid x N
    Eigen::MatrixXd d2g_grid_;  // grid x N
};

/// One-shot version of CriticalPointCounter::count.
CriticalPoints count_critical_points(const FunctionFamily& family, const Knot& knot,
                                     const Eigen::VectorXd& coeffs, const McConfig& config = {});

struct SampleRecord {
    std::int64_t index = 0;
    std::uint64_t seed = 0;
    /// -1 when every draw of this sample was non-Morse.
    int count = -1;
    int discarded_attempts = 0;
};

struct McReport {
    double mean = 0.0;
    double standard_error = 0.0;
    std::vector<SampleRecord> samples;
    std::int64_t discarded = 0;
    std::int64_t effective_samples = 0;
    std::uint64_t seed = 0;
    int scan_grid = 0;

    double discard_rate() const;
};

/// Monte Carlo estimate of the expected number of critical points.
/// Bit-identical for a fixed config regardless of `workers`.
/// Throws ConvergenceError when the discard rate exceeds max_discard_rate.
McReport mc_expectation(const FunctionFamily& family, const Knot& knot, const McConfig& config = {});

/// One row per sample: index,seed,count,discarded_attempts.
void write_samples_csv(const McReport& report, std::ostream& out);

}  // namespace kcrit
