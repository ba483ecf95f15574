#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kcrit/app/json_format.hpp"
#include "kcrit/app/specs.hpp"

namespace kcrit::app {

enum ExitCode : int {
    kExitOk = 0,
    kExitSpecError = 1,
    kExitPrecondition = 2,
    kExitNonConvergence = 3,
};

Json run_expect(const RunSpec& spec);
Json run_mc(const RunSpec& spec);
Json run_tau(const RunSpec& spec);
Json run_closed_form(const RunSpec& spec);
Json run_compare(const RunSpec& spec);

/// Verdict of a formula/Monte Carlo comparison: z = |mean - mu| / SE and
/// pass when z <= 3.
Json compare_verdict(const Json& formula, const Json& monte_carlo);

/// Full CLI: parse, dispatch, print JSON to `out`, diagnostics to `err`.
/// Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kcrit::app
