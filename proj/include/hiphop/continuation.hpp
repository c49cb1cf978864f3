#ifndef HIPHOP_CONTINUATION_HPP
#define HIPHOP_CONTINUATION_HPP

#include <vector>

#include "hiphop/solver.hpp"

namespace hiphop {

struct ContinuationOptions {
    double stepInit = 1e-3;
    double stepGrow = 1.5;
    double stepShrink = 0.5;
    double stepMin = 1e-7;
    double stepMax = 0.05;
    double familyTol = 1e-8; // residualNorm bound for accepting a point

    void validate() const;
};

struct StepRecord {
    double b;       // attempted target
    double step;
    bool accepted;
};

struct Family {
    int N;
    double m;
    double r0;
    int k;
    std::vector<SolutionPoint> points; // ordered by b, points[0].b == 0
    std::vector<StepRecord> stepHistory;
};

struct ChoreographyClass {
    int trajectoryCount;  // distinct closed curves traced by the 2N primaries
    double thetaAdvance;  // theta(2T) reduced mod 2pi
    double matchError;    // worst normalized distance used for the count
};

/*
 * Natural-parameter continuation in b, upward from the b = 0 seed
 * (aStar, 0, u0, k*T1Star) with u0 from inversion of the period curve.
 * Steps grow by stepGrow on success and halve on failure; the family stops at
 * bMax, or earlier when the step underflows stepMin (reported as a partial
 * family).  Every accepted point passes verify_periodicity at familyTol.
 * Throws SeedFailure if the b = 0 point cannot be solved.
 */
Family continue_family(const ProblemParams& params, int k, double bMax,
                       const ContinuationOptions& copts, const NewtonOptions& nopts,
                       const IntegratorOptions& iopts);

/*
 * Counts the distinct closed curves traced by the 2N primaries of a verified
 * point.  Body j is the (j-1)-th image of body 1 under the order-2N screw
 * symmetry (rotate pi/N, flip z), so bodies j and j' share a curve exactly
 * when the (j-j')-th power of that symmetry maps body 1's closed curve onto
 * itself; the count is the smallest such power, a divisor of 2N.
 *
 * Operationally: theta(2T) must lie within tol of a multiple q pi/N
 * (Unclassifiable otherwise); body 1's curve closes after 2N/gcd(q, 2N)
 * periods and is sampled there; candidate powers are confirmed by nearest-
 * distance matching of rotated test points against the sampled curve,
 * normalized by the curve scale.  A planar orbit (d identically 0) is a
 * single shared circle.
 */
ChoreographyClass classify_choreography(const ProblemParams& params, const SolutionPoint& point,
                                        double tol, const IntegratorOptions& iopts);

} // namespace hiphop

#endif
