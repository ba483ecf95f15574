#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

#include "kcrit/family.hpp"
#include "kcrit/knot.hpp"

namespace kcrit::app {

/// Textual knot selection: circle[:center=x,y[,r=R]], trefoil, ellipse:a,b,
/// file:PATH (Fourier JSON).
struct KnotSpec {
    enum class Kind { circle, trefoil, ellipse, file };
    Kind kind = Kind::circle;
    double center_x = 0.0;
    double center_y = 0.0;
    double radius = 1.0;
    double semi_a = 2.0;
    double semi_b = 1.0;
    std::string path;

    bool operator==(const KnotSpec&) const = default;
};

KnotSpec parse_knot_spec(const std::string& text);
std::string to_string(const KnotSpec& spec);
Knot build_knot(const KnotSpec& spec);

/// Textual family selection: veronese:n=N,ell=L or trig:n=N. For veronese,
/// n may be omitted and is then taken from the knot.
struct FamilySpec {
    enum class Kind { veronese, trig };
    Kind kind = Kind::veronese;
    int n = 0;
    int ell = 1;

    bool operator==(const FamilySpec&) const = default;
};

FamilySpec parse_family_spec(const std::string& text);
std::string to_string(const FamilySpec& spec);
FunctionFamily build_family(const FamilySpec& spec, const Knot& knot);

enum class Command { expect, mc, tau, closed_form, compare };

std::string to_string(Command command);

/// Everything one CLI invocation needs. All fields have defaults.
struct RunSpec {
    Command command = Command::expect;
    KnotSpec knot{};
    FamilySpec family{};
    double qtol = 1e-10;
    std::int64_t samples = 20000;
    std::uint64_t seed = 42;
    int scan_grid = 0;
    int grid = kDefaultValidationGrid;
    int veronese_ell = 0;
    int workers = 1;
    std::string csv_out;

    bool operator==(const RunSpec&) const = default;
};

/// Thrown by parse_run_spec when --help was requested.
struct HelpRequested {
    std::string text;
};

/// Parses argv-style arguments (without the program name). Throws SpecError
/// on malformed input and HelpRequested for --help.
RunSpec parse_run_spec(const std::vector<std::string>& args);

/// The argument list that parses back to `spec`.
std::vector<std::string> to_args(const RunSpec& spec);

}  // namespace kcrit::app
