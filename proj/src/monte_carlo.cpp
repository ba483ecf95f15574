#include "kcrit/monte_carlo.hpp"

#include "kcrit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <thread>

namespace kcrit {

Eigen::VectorXd sample_unit_sphere(int N, Rng& rng) {
    if (N < 1) throw SpecError("sample_unit_sphere: dimension must be positive");
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd v(N);
    while (true) {
        for (int i = 0; i < N; ++i) v[i] = normal(rng);
        const double norm = v.norm();
        if (norm >= 1e-8) return v / norm;
    }
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t sample_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

int default_scan_grid(const FunctionFamily& family, const Knot& knot) {
    const int degree = family.circle_degree();
    if (degree > 0 && knot.shape() != KnotShape::general) return 64 * degree;
    return 4096;
}

CriticalPointCounter::CriticalPointCounter(FunctionFamily family, Knot knot, const McConfig& config)
    : family_(std::move(family)), knot_(std::move(knot)), config_(config) {
    family_.check_applicable(knot_);
    grid_ = config_.scan_grid > 0 ? config_.scan_grid : default_scan_grid(family_, knot_);
    const int degree = family_.circle_degree();
    if (grid_ < 8 || (degree > 0 && grid_ < 8 * degree)) {
        throw SpecError("scan grid " + std::to_string(grid_) + " is too coarse for " + family_.describe());
    }
    if (!(config_.bisection_tol > 0.0) || config_.max_bisection_iterations < 1) {
        throw SpecError("bisection settings must be positive");
    }
    const int N = family_.dim();
    dg_grid_.resize(grid_, N);
    d2g_grid_.resize(grid_, N);
    for (int j = 0; j < grid_; ++j) {
        const RestrictedJet jet = family_.restrict_to(knot_, knot_.period() * j / grid_);
        dg_grid_.row(j) = jet.dg.transpose();
        d2g_grid_.row(j) = jet.d2g.transpose();
    }
}

double CriticalPointCounter::h(const Eigen::VectorXd& coeffs, double t) const {
    return coeffs.dot(family_.restrict_to(knot_, t).dg);
}

double CriticalPointCounter::bisect(const Eigen::VectorXd& coeffs, double lo, double hi, double h_lo) const {
    for (int it = 0; it < config_.max_bisection_iterations && hi - lo > config_.bisection_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double h_mid = h(coeffs, mid);
        if (h_mid == 0.0) return mid;
        if ((h_mid > 0.0) == (h_lo > 0.0)) {
            lo = mid;
            h_lo = h_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

CriticalPoints CriticalPointCounter::count(const Eigen::VectorXd& coeffs) const {
    if (coeffs.size() != family_.dim()) {
        throw SpecError("coefficient vector has dimension " + std::to_string(coeffs.size()) + ", family has " +
                        std::to_string(family_.dim()));
    }
    const double period = knot_.period();
    const double step = period / grid_;

    std::vector<double> nodes(static_cast<std::size_t>(grid_));
    std::vector<double> values(static_cast<std::size_t>(grid_));
    const Eigen::VectorXd grid_h = dg_grid_ * coeffs;
    for (int j = 0; j < grid_; ++j) {
        double t = period * j / grid_;
        double value = grid_h[j];
        // A node sitting on a zero has no sign; push it forward deterministically.
        for (double offset = 0.5 * step; std::abs(value) < 1e-14 && offset > step * 1e-6; offset *= 0.5) {
            t = period * j / grid_ + offset;
            value = h(coeffs, t);
        }
        nodes[j] = t;
        values[j] = value;
    }

    const double max_slope = (d2g_grid_ * coeffs).cwiseAbs().maxCoeff();
    CriticalPoints out;
    for (int j = 0; j < grid_; ++j) {
        const int next = (j + 1) % grid_;
        const double h_lo = values[j];
        const double h_hi = values[next];
        if ((h_lo > 0.0) == (h_hi > 0.0)) continue;
        const double lo = nodes[j];
        const double hi = next == 0 ? nodes[0] + period : nodes[next];
        double root = bisect(coeffs, lo, hi, h_lo);
        if (root >= period) root -= period;
        const double slope = coeffs.dot(family_.restrict_to(knot_, root).d2g);
        if (!(std::abs(slope) > config_.morse_tol * max_slope)) out.morse = false;
        out.roots.push_back(root);
    }
    out.count = static_cast<int>(out.roots.size());
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

CriticalPoints count_critical_points(const FunctionFamily& family, const Knot& knot,
                                     const Eigen::VectorXd& coeffs, const McConfig& config) {
    return CriticalPointCounter(family, knot, config).count(coeffs);
}

double McReport::discard_rate() const {
    const auto draws = static_cast<double>(samples.size()) + static_cast<double>(discarded);
    return draws > 0.0 ? static_cast<double>(discarded) / draws : 0.0;
}

McReport mc_expectation(const FunctionFamily& family, const Knot& knot, const McConfig& config) {
    if (config.samples < 1) throw SpecError("monte carlo: need at least one sample");
    if (config.max_redraws < 0) throw SpecError("monte carlo: max_redraws must be nonnegative");
    require_nondegenerate(family, knot, config.validation_grid);

    const CriticalPointCounter counter(family, knot, config);
    const int N = family.dim();

    McReport report;
    report.seed = config.seed;
    report.scan_grid = counter.scan_grid();
    report.samples.resize(static_cast<std::size_t>(config.samples));

    auto run_sample = [&](std::int64_t index) {
        SampleRecord& record = report.samples[static_cast<std::size_t>(index)];
        record.index = index;
        record.seed = sample_seed(config.seed, static_cast<std::uint64_t>(index));
        Rng rng(record.seed);
        for (int attempt = 0; attempt <= config.max_redraws; ++attempt) {
            const CriticalPoints cp = counter.count(sample_unit_sphere(N, rng));
            if (cp.morse) {
                record.count = cp.count;
                return;
            }
            ++record.discarded_attempts;
        }
    };

    int workers = config.workers > 0 ? config.workers : static_cast<int>(std::thread::hardware_concurrency());
    workers = static_cast<int>(std::clamp<std::int64_t>(workers, 1, config.samples));
    if (workers == 1) {
        for (std::int64_t i = 0; i < config.samples; ++i) run_sample(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::int64_t i = w; i < config.samples; i += workers) run_sample(i);
            });
        }
        for (auto& th : pool) th.join();
    }

    // Index-ordered aggregation in exact integer arithmetic.
    std::int64_t sum = 0;
    std::int64_t sum_sq = 0;
    for (const auto& record : report.samples) {
        report.discarded += record.discarded_attempts;
        if (record.count < 0) continue;
        ++report.effective_samples;
        sum += record.count;
        sum_sq += static_cast<std::int64_t>(record.count) * record.count;
    }
    if (report.effective_samples == 0) {
        throw ConvergenceError("monte carlo: every sample was non-Morse");
    }
    const auto m = static_cast<double>(report.effective_samples);
    report.mean = static_cast<double>(sum) / m;
    if (report.effective_samples > 1) {
        const double centered = static_cast<double>(sum_sq) - static_cast<double>(sum) * report.mean;
        report.standard_error = std::sqrt(std::max(centered, 0.0) / (m - 1.0) / m);
    }
    if (report.discard_rate() > config.max_discard_rate) {
        throw ConvergenceError("monte carlo: discard rate " + std::to_string(report.discard_rate()) +
                               " exceeds " + std::to_string(config.max_discard_rate) +
                               "; the scan grid is too coarse or the family is degenerate");
    }
    return report;
}

void write_samples_csv(const McReport& report, std::ostream& out) {
    out << "index,seed,count,discarded_attempts\n";
    for (const auto& r : report.samples) {
        out << r.index << ',' << r.seed << ',' << r.count << ',' << r.discarded_attempts << '\n';
    }
}

}  // namespace kcrit
