#ifndef HIPHOP_FLOW_HPP
#define HIPHOP_FLOW_HPP

#include <array>

#include "hiphop/integrator.hpp"
#include "hiphop/model.hpp"

namespace hiphop {

// Shooting unknowns: angular momentum a, initial ddot = b, initial zdot = u,
// candidate half-period T.  The orbit starts at (r0, 0, 0, b, 0, 0, u).
struct ShootingPoint {
    double a;
    double b;
    double u;
    double T;
};

// Diagnostics of a full-orbit periodicity check over [0, 2T].
struct PeriodicityReport {
    double residualNorm;   // max of |rdot|, |d|, |z| at t = T
    double stateGap;       // max component gap |state(2T) - state(0)|, theta excluded
    double thetaAdvance;   // theta(2T)
    double symmetryDefect; // worst violation of the reflection relations about t = T
    double energyDrift;    // relative energy drift over [0, 2T]
};

ReducedState initial_state(const ProblemParams& params, double b, double u);

// Integrates [0, T] and reads the shooting maps at T.
// Returns (rdot(T), d(T), z(T), theta(T)); the trajectory is output through traj.
std::array<double, 4> evaluate_maps(const ProblemParams& params, const ShootingPoint& point,
                                    const IntegratorOptions& opts, Trajectory* traj = nullptr);

// The residual whose zero gives a 2T-periodic orbit: (rdot(T), d(T), z(T)).
std::array<double, 3> residual3(const ProblemParams& params, const ShootingPoint& point,
                                const IntegratorOptions& opts);

// Primaries-only residual (rdot(T), d(T)); the (r,d) subsystem never reads z,
// so u is irrelevant here.
std::array<double, 2> residual2_primaries(const ProblemParams& params, double a, double b,
                                          double T, const IntegratorOptions& opts);

/*
 * Full verification pass over one period [0, 2T]:
 *   residualNorm   from the state at T,
 *   stateGap       between t = 0 and t = 2T (theta excluded),
 *   symmetryDefect max over 65 grid offsets s in [0, T] of
 *                  |r(T+s)-r(T-s)|, |d(T+s)+d(T-s)|, |z(T+s)+z(T-s)|,
 *   energyDrift    relative drift of the reduced energy.
 * No thresholding here; callers decide pass/fail.
 */
PeriodicityReport verify_periodicity(const ProblemParams& params, const ShootingPoint& point,
                                     const IntegratorOptions& opts);

} // namespace hiphop

#endif
