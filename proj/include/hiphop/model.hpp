#ifndef HIPHOP_MODEL_HPP
#define HIPHOP_MODEL_HPP

#include <array>
#include <vector>

#include "hiphop/errors.hpp"

namespace hiphop {

/*
 * Physical data of the problem: 2N equal primaries of mass m arranged as an
 * antiprism that starts on a ring of radius r0, plus a massless body on the
 * z-axis.  The trigonometric tables sinK/wK (k = 1..2N-1) appear in every
 * force denominator and are precomputed at construction.
 */
struct ProblemParams {
    int N;
    double m;
    double r0;

    std::vector<double> sinK; // sin(k pi / 2N)
    std::vector<double> wK;   // ((-1)^k - 1)^2, i.e. 4 for odd k, 0 for even k

    ProblemParams(int N_, double m_, double r0_);
};

// Constants of the circular configuration (d = 0, r = r0):
//   aStar  - angular momentum of the relative equilibrium
//   T1Star - half-period of the linearized in-plane oscillation
//   T2Star - small-amplitude half-period of the axial body
//   uMax   - axial escape speed sqrt(4mN/r0)
struct DerivedConstants {
    double alphaN;
    double gammaN;
    double aStar;
    double T1Star;
    double T2Star;
    double uMax;
};

// Full ODE state (r, rdot, d, ddot, theta, z, zdot).
struct ReducedState {
    double r;
    double rdot;
    double d;
    double ddot;
    double theta;
    double z;
    double zdot;

    std::array<double, 7> as_array() const {
        return {r, rdot, d, ddot, theta, z, zdot};
    }
    static ReducedState from_array(const std::array<double, 7>& y) {
        return {y[0], y[1], y[2], y[3], y[4], y[5], y[6]};
    }
};

// alphaN = (1/16) sum_k ((-1)^k-1)^2 / sin^3(k pi/2N)
// gammaN = (1/4)  sum_k 1 / sin(k pi/2N),  k = 1..2N-1.
// Accumulated in long double and rounded once.
void sum_constants(int N, double& alphaN, double& gammaN);

DerivedConstants derived_constants(const ProblemParams& params);

// Smallest integer k >= 1 with T2Star < k*T1Star.
int smallest_k(const DerivedConstants& dc);

// Right-hand sides of the three second-order equations:
//   rddot = f(r,d) = a^2/r^3 - 2rm sum_k sin^2 / [4r^2 sin^2 + w d^2]^{3/2}
//   dddot = g(r,d) = -(md/2) sum_k w / [...]^{3/2}
//   zddot = h(r,d,z) = -mN [ (z-d)/((z-d)^2+r^2)^{3/2} + (z+d)/((z+d)^2+r^2)^{3/2} ]
// Throws CollisionError if r <= 0.
void accelerations(const ProblemParams& params, double a, const ReducedState& state,
                   double& rddot, double& dddot, double& zddot);

// Potential of the (r,d) subsystem, normalized so -grad U = (f - a^2/r^3, g):
//   U(r,d) = -(m/2) sum_k [4r^2 sin^2(k pi/2N) + ((-1)^k-1)^2 d^2]^{-1/2}
double potential(const ProblemParams& params, double r, double d);

// Conserved energy of the (r,d) subsystem:
//   E = (rdot^2 + ddot^2)/2 + a^2/(2r^2) + U(r,d)
double reduced_energy(const ProblemParams& params, double a, const ReducedState& state);

// 3D positions of the 2N primaries.  Body j (1-indexed) is the (j-1)-th image
// of (r cos theta, r sin theta, d) under the order-2N symmetry that rotates by
// pi/N about the z-axis and flips z; entries alternate z = d, -d, d, -d, ...
std::vector<std::array<double, 3>> embed_bodies(const ProblemParams& params,
                                                double r, double theta, double d);

} // namespace hiphop

#endif
