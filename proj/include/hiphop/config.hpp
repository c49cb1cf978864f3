#ifndef HIPHOP_CONFIG_HPP
#define HIPHOP_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "hiphop/continuation.hpp"
#include "hiphop/integrator.hpp"
#include "hiphop/solver.hpp"

namespace hiphop {

/*
 * One run's worth of configuration.  Every field has a default; values can
 * come from a flat key = value config file (path in $HIPHOP_CONFIG) and are
 * overridden by command-line flags.
 */
struct RunConfig {
    int N = 3;
    double m = 1.0;
    double r0 = 2.0;

    IntegratorOptions integ;
    NewtonOptions newton;
    ContinuationOptions cont;

    double classifyTol = 1e-6; // commensurability / curve-match tolerance
    double verifyTol = 1e-8;   // pass threshold for the verify command
    int samples = 1000;        // output rows per trajectory export

    // command arguments (flags --a --b --u --T --k --b-max --t-end --u-grid)
    std::optional<double> a, b, u, T, bMax, tEnd;
    std::optional<int> k;
    std::vector<double> uGrid;

    std::string out; // output path; empty means stdout
};

// Parses a flat key = value file ('#' starts a comment).  Unknown keys and
// malformed lines raise ConfigError with the line number and field name.
void load_config_file(const std::string& path, RunConfig& cfg);

// Applies command-line flags on top (flags win over file values).
// Expects argv entries after the subcommand name.
void apply_flags(const std::vector<std::string>& args, RunConfig& cfg);

// File (if HIPHOP_CONFIG is set) + flags, in that order.
RunConfig make_config(const std::vector<std::string>& args);

ProblemParams params_from(const RunConfig& cfg);

} // namespace hiphop

#endif
