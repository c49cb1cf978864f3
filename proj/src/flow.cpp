#include "hiphop/flow.hpp"

#include <algorithm>
#include <cmath>

namespace hiphop {

ReducedState initial_state(const ProblemParams& params, double b, double u) {
    return {params.r0, 0.0, 0.0, b, 0.0, 0.0, u};
}

std::array<double, 4> evaluate_maps(const ProblemParams& params, const ShootingPoint& point,
                                    const IntegratorOptions& opts, Trajectory* traj) {
    if (!(point.T > 0.0)) throw InvalidParams("candidate half-period must be positive");
    Trajectory tr = integrate(params, point.a, initial_state(params, point.b, point.u),
                              0.0, point.T, opts);
    const ReducedState sT = tr.state(point.T);
    if (traj) *traj = std::move(tr);
    return {sT.rdot, sT.d, sT.z, sT.theta};
}

std::array<double, 3> residual3(const ProblemParams& params, const ShootingPoint& point,
                                const IntegratorOptions& opts) {
    const auto maps = evaluate_maps(params, point, opts);
    return {maps[0], maps[1], maps[2]};
}

std::array<double, 2> residual2_primaries(const ProblemParams& params, double a, double b,
                                          double T, const IntegratorOptions& opts) {
    const auto maps = evaluate_maps(params, {a, b, 0.0, T}, opts);
    return {maps[0], maps[1]};
}

PeriodicityReport verify_periodicity(const ProblemParams& params, const ShootingPoint& point,
                                     const IntegratorOptions& opts) {
    if (!(point.T > 0.0)) throw InvalidParams("candidate half-period must be positive");
    const ReducedState s0 = initial_state(params, point.b, point.u);
    const Trajectory tr = integrate(params, point.a, s0, 0.0, 2.0 * point.T, opts);

    PeriodicityReport rep;

    const ReducedState sT = tr.state(point.T);
    rep.residualNorm = std::max({std::fabs(sT.rdot), std::fabs(sT.d), std::fabs(sT.z)});

    const ReducedState s2T = tr.state(2.0 * point.T);
    rep.stateGap = std::max({std::fabs(s2T.r - s0.r), std::fabs(s2T.rdot - s0.rdot),
                             std::fabs(s2T.d - s0.d), std::fabs(s2T.ddot - s0.ddot),
                             std::fabs(s2T.z - s0.z), std::fabs(s2T.zdot - s0.zdot)});
    rep.thetaAdvance = s2T.theta;

    // reflection relations about t = T: r even, d odd, z odd
    rep.symmetryDefect = 0.0;
    const int nGrid = 65;
    for (int i = 0; i < nGrid; ++i) {
        const double s = point.T * i / (nGrid - 1);
        const ReducedState plus = tr.state(point.T + s);
        const ReducedState minus = tr.state(point.T - s);
        rep.symmetryDefect = std::max({rep.symmetryDefect,
                                       std::fabs(plus.r - minus.r),
                                       std::fabs(plus.d + minus.d),
                                       std::fabs(plus.z + minus.z)});
    }

    const double E0 = reduced_energy(params, point.a, s0);
    double worst = 0.0;
    const int nE = 257;
    for (int i = 0; i <= nE; ++i) {
        const double t = 2.0 * point.T * i / nE;
        worst = std::max(worst, std::fabs(reduced_energy(params, point.a, tr.state(t)) - E0));
    }
    rep.energyDrift = worst / std::fabs(E0);

    return rep;
}

} // namespace hiphop
