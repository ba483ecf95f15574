#include "kcrit/app/run.hpp"

#include "kcrit/closed_forms.hpp"
#include "kcrit/errors.hpp"
#include "kcrit/expectation.hpp"
#include "kcrit/monte_carlo.hpp"
#include "kcrit/veronese.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>

namespace kcrit::app {

namespace {

McConfig mc_config(const RunSpec& spec) {
    McConfig config;
    config.samples = spec.samples;
    config.seed = spec.seed;
    config.scan_grid = spec.scan_grid;
    config.workers = spec.workers;
    config.validation_grid = spec.grid;
    return config;
}

QuadratureConfig quadrature_config(const RunSpec& spec) {
    QuadratureConfig config;
    config.qtol = spec.qtol;
    return config;
}

void write_csv(const McReport& report, const std::string& path) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SpecError("cannot open CSV output '" + path + "'");
    write_samples_csv(report, out);
}

bool converged(const Json& doc) {
    if (doc.contains("converged") && !doc["converged"].get<bool>()) return false;
    if (doc.contains("formula")) return converged(doc["formula"]);
    return true;
}

}  // namespace

Json run_expect(const RunSpec& spec) {
    const Knot knot = build_knot(spec.knot);
    const FunctionFamily family = build_family(spec.family, knot);
    ExpectationOptions options;
    options.quadrature = quadrature_config(spec);
    options.validation_grid = spec.grid;
    const Expectation result = expected_critical_points(family, knot, options);

    Json doc;
    doc["mu"] = result.mu;
    doc["grid_points"] = result.grid_points;
    doc["converged"] = result.converged;
    doc["qtol"] = spec.qtol;
    doc["knot"] = to_string(spec.knot);
    doc["family"] = family.describe();
    return doc;
}

Json run_mc(const RunSpec& spec) {
    const Knot knot = build_knot(spec.knot);
    const FunctionFamily family = build_family(spec.family, knot);
    const McReport report = mc_expectation(family, knot, mc_config(spec));
    write_csv(report, spec.csv_out);

    Json doc;
    doc["mean"] = report.mean;
    doc["standard_error"] = report.standard_error;
    doc["samples"] = spec.samples;
    doc["effective_samples"] = report.effective_samples;
    doc["discarded"] = report.discarded;
    doc["discard_rate"] = report.discard_rate();
    doc["seed"] = report.seed;
    doc["scan_grid"] = report.scan_grid;
    doc["knot"] = to_string(spec.knot);
    doc["family"] = family.describe();
    return doc;
}

Json run_tau(const RunSpec& spec) {
    Knot knot = build_knot(spec.knot);
    if (spec.veronese_ell > 0) {
        knot = veronese_immersion(VeroneseChart(knot.ambient_dim(), spec.veronese_ell), knot, spec.grid);
    }
    require_immersion(knot, kDefaultImmersionTol, spec.grid);
    const QuadratureConfig quadrature = quadrature_config(spec);
    const Integral tau = total_curvature_integral(knot, quadrature);
    const Integral length = periodic_trapezoid([&knot](double t) { return knot.velocity(t).norm(); },
                                               knot.period(), quadrature);

    Json doc;
    doc["tau"] = tau.value;
    doc["tau_over_pi"] = tau.value / std::numbers::pi;
    doc["length"] = length.value;
    doc["grid_points"] = tau.points;
    doc["converged"] = tau.converged && length.converged;
    doc["knot"] = to_string(spec.knot);
    doc["veronese_ell"] = spec.veronese_ell;
    return doc;
}

Json run_closed_form(const RunSpec& spec) {
    if (!(spec.knot == KnotSpec{})) {
        throw SpecError("closed forms are known only for the unit circle centered at the origin");
    }
    Json doc;
    doc["knot"] = to_string(spec.knot);
    if (spec.family.kind == FamilySpec::Kind::trig) {
        doc["family"] = to_string(spec.family);
        doc["formula"] = "2*sqrt(sum k^4 / sum k^2)";
        doc["value"] = trig_expectation(spec.family.n);
    } else {
        if (spec.family.n != 0 && spec.family.n != 2) {
            throw SpecError("the circle law applies to homogeneous forms on R^2");
        }
        doc["family"] = "veronese:n=2,ell=" + std::to_string(spec.family.ell);
        doc["formula"] = "2*sqrt(3*ell-2)";
        doc["value"] = circle_veronese_expectation(spec.family.ell);
    }
    return doc;
}

Json compare_verdict(const Json& formula, const Json& monte_carlo) {
    const double mu = formula.at("mu").get<double>();
    const double mean = monte_carlo.at("mean").get<double>();
    const double se = monte_carlo.at("standard_error").get<double>();
    const double diff = std::abs(mean - mu);
    double z = 0.0;
    if (se > 0.0) {
        z = diff / se;
    } else if (diff > 0.0) {
        z = std::numeric_limits<double>::infinity();
    }
    Json verdict;
    verdict["z"] = z;
    verdict["pass"] = z <= 3.0;
    return verdict;
}

Json run_compare(const RunSpec& spec) {
    const Json formula = run_expect(spec);
    const Json monte_carlo = run_mc(spec);
    const Json verdict = compare_verdict(formula, monte_carlo);

    Json doc;
    doc["knot"] = to_string(spec.knot);
    doc["family"] = formula["family"];
    doc["formula"] = formula;
    doc["monte_carlo"] = monte_carlo;
    doc["z"] = verdict["z"];
    doc["pass"] = verdict["pass"];
    return doc;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        const RunSpec spec = parse_run_spec(args);
        Json doc;
        switch (spec.command) {
            case Command::expect: doc = run_expect(spec); break;
            case Command::mc: doc = run_mc(spec); break;
            case Command::tau: doc = run_tau(spec); break;
            case Command::closed_form: doc = run_closed_form(spec); break;
            case Command::compare: doc = run_compare(spec); break;
        }
        out << dump_json(doc) << '\n';
        if (!converged(doc)) {
            err << "error: quadrature did not converge to qtol " << spec.qtol << '\n';
            return kExitNonConvergence;
        }
        return kExitOk;
    } catch (const HelpRequested& help) {
        out << help.text;
        return kExitOk;
    } catch (const SpecError& e) {
        err << "error: " << e.what() << '\n';
        return kExitSpecError;
    } catch (const DegeneracyError& e) {
        err << "error: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNonConvergence;
    }
}

}  // namespace kcrit::app
