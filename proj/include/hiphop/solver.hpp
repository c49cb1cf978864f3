#ifndef HIPHOP_SOLVER_HPP
#define HIPHOP_SOLVER_HPP

#include <functional>
#include <vector>

#include "hiphop/flow.hpp"

namespace hiphop {

struct NewtonOptions {
    double fdStep = 1e-6;       // relative finite-difference step
    double tolResidual = 1e-10; // stop when the residual inf-norm drops below
    int maxIter = 25;
    double damping = 0.5;       // backtracking factor
    int maxHalvings = 8;

    void validate() const;
};

struct NewtonResult {
    std::vector<double> x;
    bool converged;
    int iterations;
    double residualNorm;
};

// A solved quadruple with its verification report.
struct SolutionPoint {
    double a;
    double b;
    double u;
    double T;
    int k;                        // half-period multiple: T targets k*T1(b)
    std::array<double, 3> residual{}; // (rdot, d, z) at T, from the final check
    PeriodicityReport report{};
    bool converged = false;
    int iterations = 0;
    std::vector<double> otherBracketUs; // further sign changes seen in the u scan
};

/*
 * Damped Newton iteration with a forward-difference Jacobian.  Difference
 * steps are relative to each coordinate with an absolute floor of 1e-8 (the
 * coordinates differ in scale).  The linear solve is partial-pivot LU; a
 * condition estimate above 1e14 aborts with SingularJacobian.  If eight step
 * halvings cannot reduce the residual, NoProgress is thrown; running out of
 * iterations returns the best iterate with converged = false.
 */
NewtonResult newton_solve(const std::function<std::vector<double>(const std::vector<double>&)>& F,
                          std::vector<double> x0, const NewtonOptions& opts);

// Stage 1: solve (rdot, d)(a, b, T) = 0 for (a, T) at fixed b.  The guess must
// be continuation-quality (e.g. the previous family point).
void solve_primaries(const ProblemParams& params, double b, double& a, double& T,
                     const NewtonOptions& nopts, const IntegratorOptions& iopts);

// Stage 2: solve z(a, b, u, Ttarget) = 0 for u inside [u1, u2] by bisection
// plus a Newton polish; the result never leaves the bracket.  Both endpoint
// signs must differ (NoSignChange otherwise).
double solve_massless_u(const ProblemParams& params, double a, double b, double Ttarget,
                        double u1, double u2, const NewtonOptions& nopts,
                        const IntegratorOptions& iopts);

// Optional seeds for solve_point, used by the continuation driver.
struct PointHints {
    double a;
    double T;       // half-period of the primaries, T1(b), NOT k*T1(b)
    double u;
    bool valid = false;
};

/*
 * Staged solve at fixed b:
 *   stage 1  (a, T1) from solve_primaries (seeded from hints or the circular
 *            equilibrium),
 *   stage 2  u from a 16-point sign-change scan of z(T) over
 *            [0.05, 0.98] uMax (narrowed around the hint when available),
 *            smallest-u bracket first, the rest recorded in otherBracketUs,
 *   stage 3  joint Newton polish of (a, u, T) on the full residual at fixed b
 *            (on by default; reconciles the staged pieces),
 * then a full verify_periodicity pass fills the report.
 * Failures carry the stage name (seed/newton/bracket/integrator).
 */
SolutionPoint solve_point(const ProblemParams& params, double b, int k,
                          const NewtonOptions& nopts, const IntegratorOptions& iopts,
                          bool polish = true, const PointHints* hints = nullptr);

// Joint Newton polish of (a, u, T) on the full residual, b and k fixed.
// Used standalone to refine externally supplied quadruples.
SolutionPoint polish_point(const ProblemParams& params, const ShootingPoint& seed, int k,
                           const NewtonOptions& nopts, const IntegratorOptions& iopts);

} // namespace hiphop

#endif
