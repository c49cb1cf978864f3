#include <clocale>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "hiphop/config.hpp"
#include "hiphop/io.hpp"
#include "hiphop/period.hpp"

using namespace hiphop;

namespace {

constexpr int EXIT_OK = 0;
constexpr int EXIT_CONFIG = 2;
constexpr int EXIT_SOLVER = 3;
constexpr int EXIT_INTEGRATOR = 4;
constexpr int EXIT_VERIFY = 5;

void usage(std::FILE* to) {
    std::fputs(
        "usage: hiphop <command> [flags]\n"
        "\n"
        "commands:\n"
        "  constants             derived constants of the circular configuration\n"
        "  simulate              integrate one orbit and export the trajectory CSV\n"
        "  solve                 staged solve of a periodic point at fixed b\n"
        "  family                natural-parameter continuation in b up to --b-max\n"
        "  period-curve          axial half-period T(u) over a grid of u values\n"
        "  verify                periodicity check of a supplied (a, b, u, T)\n"
        "  classify              count the closed curves traced by the primaries\n"
        "\n"
        "flags: --N --m --r0 --rel-tol --abs-tol --b --u --a --T --k --b-max\n"
        "       --t-end --u-grid --out\n"
        "\n"
        "Defaults are read from the file named by $HIPHOP_CONFIG (key = value\n"
        "lines, '#' comments); flags override file values.\n",
        to);
}

double require(const std::optional<double>& v, const char* flag) {
    if (!v) throw ConfigError(std::string("missing required flag ") + flag);
    return *v;
}

int cmd_constants(const RunConfig& cfg) {
    const ProblemParams params = params_from(cfg);
    const DerivedConstants dc = derived_constants(params);
    const int k = smallest_k(dc);
    if (cfg.out.empty()) {
        std::printf("alphaN = %.17g\n", dc.alphaN);
        std::printf("gammaN = %.17g\n", dc.gammaN);
        std::printf("aStar  = %.17g\n", dc.aStar);
        std::printf("T1Star = %.17g\n", dc.T1Star);
        std::printf("T2Star = %.17g\n", dc.T2Star);
        std::printf("uMax   = %.17g\n", dc.uMax);
        std::printf("k      = %d\n", k);
    } else {
        write_output(cfg.out, constants_json(dc, k));
    }
    return EXIT_OK;
}

int cmd_simulate(const RunConfig& cfg) {
    const ProblemParams params = params_from(cfg);
    const double a = require(cfg.a, "--a");
    const double b = require(cfg.b, "--b");
    const double u = require(cfg.u, "--u");
    const double tEnd = cfg.tEnd ? *cfg.tEnd : 2.0 * derived_constants(params).T1Star;
    if (!(tEnd > 0.0)) throw ConfigError("--t-end must be positive");
    const Trajectory traj = integrate(params, a, initial_state(params, b, u), 0.0, tEnd,
                                      cfg.integ);
    write_output(cfg.out, trajectory_csv(params, a, traj, cfg.samples));
    return EXIT_OK;
}

int cmd_solve(const RunConfig& cfg) {
    const ProblemParams params = params_from(cfg);
    const double b = require(cfg.b, "--b");
    const int k = cfg.k ? *cfg.k : smallest_k(derived_constants(params));

    SolutionPoint pt;
    if (cfg.a && cfg.u && cfg.T) {
        // full quadruple supplied: polish it instead of the staged solve
        pt = polish_point(params, {*cfg.a, b, *cfg.u, *cfg.T}, k, cfg.newton, cfg.integ);
    } else {
        pt = solve_point(params, b, k, cfg.newton, cfg.integ);
    }
    write_output(cfg.out, solution_point_json(pt));
    return pt.converged ? EXIT_OK : EXIT_SOLVER;
}

int cmd_family(const RunConfig& cfg) {
    const ProblemParams params = params_from(cfg);
    const double bMax = require(cfg.bMax, "--b-max");
    const int k = cfg.k ? *cfg.k : smallest_k(derived_constants(params));
    const Family fam = continue_family(params, k, bMax, cfg.cont, cfg.newton, cfg.integ);
    write_output(cfg.out, family_json(fam));
    return EXIT_OK;
}

int cmd_period_curve(const RunConfig& cfg) {
    const ProblemParams params = params_from(cfg);
    if (cfg.uGrid.empty()) throw ConfigError("missing required flag --u-grid");
    const std::vector<PeriodSample> samples = period_curve(params, cfg.uGrid);
    write_output(cfg.out, period_curve_csv(samples, cfg.uGrid));
    return samples.empty() ? EXIT_SOLVER : EXIT_OK;
}

int cmd_verify(const RunConfig& cfg) {
    const ProblemParams params = params_from(cfg);
    const ShootingPoint point{require(cfg.a, "--a"), require(cfg.b, "--b"),
                              require(cfg.u, "--u"), require(cfg.T, "--T")};
    const PeriodicityReport rep = verify_periodicity(params, point, cfg.integ);
    const bool ok = rep.residualNorm <= cfg.verifyTol;
    write_output(cfg.out, report_json(rep, ok));
    return ok ? EXIT_OK : EXIT_VERIFY;
}

int cmd_classify(const RunConfig& cfg) {
    const ProblemParams params = params_from(cfg);
    SolutionPoint pt;
    pt.a = require(cfg.a, "--a");
    pt.b = require(cfg.b, "--b");
    pt.u = require(cfg.u, "--u");
    pt.T = require(cfg.T, "--T");
    const ChoreographyClass cls = classify_choreography(params, pt, cfg.classifyTol, cfg.integ);
    std::string s = "{\n";
    s += "  \"trajectoryCount\": " + std::to_string(cls.trajectoryCount) + ",\n";
    s += "  \"thetaAdvance\": " + format_double(cls.thetaAdvance) + ",\n";
    s += "  \"matchError\": " + format_double(cls.matchError) + "\n";
    s += "}\n";
    write_output(cfg.out, s);
    return EXIT_OK;
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    if (argc < 2) {
        usage(stderr);
        return EXIT_CONFIG;
    }
    const std::string cmd = argv[1];
    if (cmd == "--help" || cmd == "-h" || cmd == "help") {
        usage(stdout);
        return EXIT_OK;
    }
    std::vector<std::string> args(argv + 2, argv + argc);

    try {
        const RunConfig cfg = make_config(args);
        if (cmd == "constants") return cmd_constants(cfg);
        if (cmd == "simulate") return cmd_simulate(cfg);
        if (cmd == "solve") return cmd_solve(cfg);
        if (cmd == "family") return cmd_family(cfg);
        if (cmd == "period-curve") return cmd_period_curve(cfg);
        if (cmd == "verify") return cmd_verify(cfg);
        if (cmd == "classify") return cmd_classify(cfg);
        std::fprintf(stderr, "unknown command '%s'\n", cmd.c_str());
        usage(stderr);
        return EXIT_CONFIG;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return EXIT_CONFIG;
    } catch (const InvalidParams& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return EXIT_CONFIG;
    } catch (const CollisionError& e) {
        std::fprintf(stderr, "integrator failure at t = %.17g: %s\n", e.t, e.what());
        return EXIT_INTEGRATOR;
    } catch (const StiffnessSuspected& e) {
        std::fprintf(stderr, "integrator failure at t = %.17g: %s\n", e.t, e.what());
        return EXIT_INTEGRATOR;
    } catch (const BudgetExceeded& e) {
        std::fprintf(stderr, "integrator failure: %s\n", e.what());
        return EXIT_INTEGRATOR;
    } catch (const Unclassifiable& e) {
        std::fprintf(stderr, "classification failure (matchError %.3g): %s\n",
                     e.matchError, e.what());
        return EXIT_VERIFY;
    } catch (const Error& e) {
        // solver-stage failures: NewtonFailed, SeedFailure, NoSignChange, ...
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return EXIT_SOLVER;
    }
}
