#include "kcrit/app/specs.hpp"

#include "kcrit/errors.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace kcrit::app {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    std::istringstream in(text);
    while (std::getline(in, current, sep)) parts.push_back(current);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

double parse_double(const std::string& text, const std::string& context) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw SpecError(context + ": '" + text + "' is not a number");
    }
    return value;
}

int parse_int(const std::string& text, const std::string& context) {
    int value = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw SpecError(context + ": '" + text + "' is not an integer");
    }
    return value;
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

KnotSpec parse_knot_spec(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
    KnotSpec spec;

    if (name == "circle") {
        spec.kind = KnotSpec::Kind::circle;
        const auto tokens = args.empty() ? std::vector<std::string>{} : split(args, ',');
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            const auto& tok = tokens[i];
            if (tok.rfind("center=", 0) == 0) {
                if (i + 1 >= tokens.size()) throw SpecError("circle: center needs two coordinates");
                spec.center_x = parse_double(tok.substr(7), "circle center");
                spec.center_y = parse_double(tokens[++i], "circle center");
            } else if (tok.rfind("r=", 0) == 0) {
                spec.radius = parse_double(tok.substr(2), "circle radius");
            } else {
                throw SpecError("circle: unknown parameter '" + tok + "'");
            }
        }
    } else if (name == "trefoil") {
        if (!args.empty()) throw SpecError("trefoil takes no parameters");
        spec.kind = KnotSpec::Kind::trefoil;
    } else if (name == "ellipse") {
        spec.kind = KnotSpec::Kind::ellipse;
        const auto tokens = split(args, ',');
        if (tokens.size() != 2) throw SpecError("ellipse: expected ellipse:a,b");
        spec.semi_a = parse_double(tokens[0], "ellipse");
        spec.semi_b = parse_double(tokens[1], "ellipse");
    } else if (name == "file") {
        if (args.empty()) throw SpecError("file: missing path");
        spec.kind = KnotSpec::Kind::file;
        spec.path = args;
    } else {
        throw SpecError("unknown knot '" + text + "' (expected circle, trefoil, ellipse or file)");
    }
    return spec;
}

std::string to_string(const KnotSpec& spec) {
    switch (spec.kind) {
        case KnotSpec::Kind::circle: {
            if (spec.center_x == 0.0 && spec.center_y == 0.0 && spec.radius == 1.0) return "circle";
            std::string out = "circle:center=" + format_double(spec.center_x) + "," + format_double(spec.center_y);
            if (spec.radius != 1.0) out += ",r=" + format_double(spec.radius);
            return out;
        }
        case KnotSpec::Kind::trefoil: return "trefoil";
        case KnotSpec::Kind::ellipse:
            return "ellipse:" + format_double(spec.semi_a) + "," + format_double(spec.semi_b);
        case KnotSpec::Kind::file: return "file:" + spec.path;
    }
    return {};
}

Knot build_knot(const KnotSpec& spec) {
    switch (spec.kind) {
        case KnotSpec::Kind::circle:
            return builtin_circle(Eigen::Vector2d(spec.center_x, spec.center_y), spec.radius);
        case KnotSpec::Kind::trefoil: return builtin_trefoil();
        case KnotSpec::Kind::ellipse: return builtin_ellipse(spec.semi_a, spec.semi_b);
        case KnotSpec::Kind::file: {
            std::ifstream in(spec.path);
            if (!in) throw SpecError("cannot open knot file '" + spec.path + "'");
            std::stringstream buffer;
            buffer << in.rdbuf();
            return knot_from_fourier(parse_fourier_spec(buffer.str()));
        }
    }
    throw SpecError("unknown knot kind");
}

FamilySpec parse_family_spec(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
    FamilySpec spec;
    bool have_n = false;
    bool have_ell = false;
    if (name == "veronese") {
        spec.kind = FamilySpec::Kind::veronese;
    } else if (name == "trig") {
        spec.kind = FamilySpec::Kind::trig;
    } else {
        throw SpecError("unknown family '" + text + "' (expected veronese:... or trig:...)");
    }
    for (const auto& tok : args.empty() ? std::vector<std::string>{} : split(args, ',')) {
        if (tok.rfind("n=", 0) == 0) {
            spec.n = parse_int(tok.substr(2), "family n");
            have_n = true;
        } else if (tok.rfind("ell=", 0) == 0 && spec.kind == FamilySpec::Kind::veronese) {
            spec.ell = parse_int(tok.substr(4), "family ell");
            have_ell = true;
        } else {
            throw SpecError("family: unknown parameter '" + tok + "'");
        }
    }
    if (spec.kind == FamilySpec::Kind::veronese) {
        if (!have_ell) throw SpecError("veronese family needs ell=");
        if (spec.ell < 1) throw SpecError("veronese family: ell must be at least 1");
        if (have_n && spec.n < 2) throw SpecError("veronese family: n must be at least 2");
    } else {
        if (!have_n) throw SpecError("trig family needs n=");
        if (spec.n < 1) throw SpecError("trig family: n must be at least 1");
        spec.ell = 1;
    }
    return spec;
}

std::string to_string(const FamilySpec& spec) {
    if (spec.kind == FamilySpec::Kind::trig) return "trig:n=" + std::to_string(spec.n);
    std::string out = "veronese:";
    if (spec.n > 0) out += "n=" + std::to_string(spec.n) + ",";
    return out + "ell=" + std::to_string(spec.ell);
}

FunctionFamily build_family(const FamilySpec& spec, const Knot& knot) {
    if (spec.kind == FamilySpec::Kind::trig) {
        FunctionFamily family = trig_family(spec.n);
        family.check_applicable(knot);
        return family;
    }
    const int n = spec.n > 0 ? spec.n : knot.ambient_dim();
    FunctionFamily family = homogeneous_family(n, spec.ell);
    family.check_applicable(knot);
    return family;
}

std::string to_string(Command command) {
    switch (command) {
        case Command::expect: return "expect";
        case Command::mc: return "mc";
        case Command::tau: return "tau";
        case Command::closed_form: return "closed-form";
        case Command::compare: return "compare";
    }
    return {};
}

RunSpec parse_run_spec(const std::vector<std::string>& args) {
    CLI::App app{"Expected number of critical points of random functions on closed curves", "kcrit"};
    app.require_subcommand(1);

    RunSpec spec;
    std::string knot_text = "circle";
    std::string family_text = "veronese:ell=1";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--knot", knot_text, "circle[:center=x,y[,r=R]] | trefoil | ellipse:a,b | file:PATH")
            ->capture_default_str();
        sub->add_option("--family", family_text, "veronese:n=N,ell=L | trig:n=N")->capture_default_str();
        sub->add_option("--qtol", spec.qtol, "relative quadrature tolerance")->capture_default_str();
        sub->add_option("--samples", spec.samples, "Monte Carlo sample count")->capture_default_str();
        sub->add_option("--seed", spec.seed, "master seed")->capture_default_str();
        sub->add_option("--scan-grid", spec.scan_grid, "critical point scan grid (0 = automatic)")
            ->capture_default_str();
        sub->add_option("--grid", spec.grid, "validation grid for immersion/nondegeneracy checks")
            ->capture_default_str();
        sub->add_option("--veronese-ell", spec.veronese_ell, "tau: immerse with this degree first (0 = no)")
            ->capture_default_str();
        sub->add_option("--workers", spec.workers, "Monte Carlo worker threads (0 = all cores)")
            ->capture_default_str();
        sub->add_option("--csv-out", spec.csv_out, "per-sample CSV output path");
    };

    const std::pair<Command, const char*> commands[] = {
        {Command::expect, "expected number of critical points from the curvature formula"},
        {Command::mc, "Monte Carlo estimate by direct critical point counting"},
        {Command::tau, "total curvature of the knot or of its Veronese immersion"},
        {Command::closed_form, "closed-form reference value on the unit circle"},
        {Command::compare, "formula against Monte Carlo with a z-score verdict"},
    };
    std::vector<std::pair<Command, CLI::App*>> subs;
    for (const auto& [command, help] : commands) {
        CLI::App* sub = app.add_subcommand(to_string(command), help);
        add_common(sub);
        subs.emplace_back(command, sub);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        for (const auto& [command, sub] : subs) {
            if (sub->parsed()) throw HelpRequested{sub->help()};
        }
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw SpecError(e.what());
    }
    for (const auto& [command, sub] : subs) {
        if (sub->parsed()) spec.command = command;
    }

    spec.knot = parse_knot_spec(knot_text);
    spec.family = parse_family_spec(family_text);
    if (!(spec.qtol > 0.0)) throw SpecError("--qtol must be positive");
    if (spec.samples < 1) throw SpecError("--samples must be at least 1");
    if (spec.scan_grid < 0) throw SpecError("--scan-grid must be nonnegative");
    if (spec.grid < 64) throw SpecError("--grid must be at least 64");
    if (spec.veronese_ell < 0) throw SpecError("--veronese-ell must be nonnegative");
    if (spec.workers < 0) throw SpecError("--workers must be nonnegative");
    return spec;
}

std::vector<std::string> to_args(const RunSpec& spec) {
    std::vector<std::string> args = {
        to_string(spec.command),
        "--knot", to_string(spec.knot),
        "--family", to_string(spec.family),
        "--qtol", format_double(spec.qtol),
        "--samples", std::to_string(spec.samples),
        "--seed", std::to_string(spec.seed),
        "--scan-grid", std::to_string(spec.scan_grid),
        "--grid", std::to_string(spec.grid),
        "--veronese-ell", std::to_string(spec.veronese_ell),
        "--workers", std::to_string(spec.workers),
    };
    if (!spec.csv_out.empty()) {
        args.push_back("--csv-out");
        args.push_back(spec.csv_out);
    }
    return args;
}

}  // namespace kcrit::app
