#ifndef HIPHOP_PERIOD_HPP
#define HIPHOP_PERIOD_HPP

#include <vector>

#include "hiphop/model.hpp"

namespace hiphop {

/*
 * Circular-primaries case (d = 0, r = r0): the axial body obeys
 *   zdot^2 = f(z) + c,  f(z) = 4mN/sqrt(z^2 + r0^2),  c = u^2 - 4mN/r0,
 * and for 0 < |u| < uMax oscillates between the turning points +-t1 with
 * half-period T(u).  The orbit z(t) is periodic with period 2 T(u).
 */
struct PeriodSample {
    double u;
    double c;
    double t1;
    double T;
};

// Turning point t1 with f(t1) + c = 0, evaluated in the cancellation-free form
// t1 = (|u|/|c|) sqrt(r0 (4mN + r0 |c|)).  Throws OutOfRegime unless 0 < |u| < uMax.
double turning_point(const ProblemParams& params, double u);

/*
 * Half-period T(u) = integral over [-t1, t1] of dz / sqrt(f(z) + c).
 *
 * The substitution z = t1 sin(phi) removes the endpoint singularities, and the
 * factorization  f(z) + c = |c| (t1^2 - z^2) / (w (w1 + w)),  with
 * w = sqrt(z^2 + r0^2) and w1 = 4mN/|c|, cancels the cos(phi) analytically:
 *
 *   T(u) = integral over [-pi/2, pi/2] of sqrt(w (w1 + w) / |c|) dphi.
 *
 * The integrand is smooth and strictly positive, so Gauss-Legendre panels
 * converge fast; panels are doubled until two refinements agree to 1e-11
 * relative.  For t1 < 1e-8 r0 the limit value T2Star is returned directly.
 */
double period_T(const ProblemParams& params, double u);

// Samples T(u) on a grid (sorted by u); out-of-regime entries are skipped.
std::vector<PeriodSample> period_curve(const ProblemParams& params, std::vector<double> uGrid);

// Inverse of the (numerically monotone) map u -> T(u): the u in (0, uMax) with
// T(u) = Ttarget, by bisection.  Requires Ttarget > T2Star.
double invert_period(const ProblemParams& params, double Ttarget);

} // namespace hiphop

#endif
