#ifndef HIPHOP_INTEGRATOR_HPP
#define HIPHOP_INTEGRATOR_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "hiphop/model.hpp"

namespace hiphop {

struct IntegratorOptions {
    double relTol = 1e-12;
    double absTol = 1e-12;
    double maxStep = 0.0;      // 0 means unrestricted
    std::int64_t maxSteps = 10000000;
    double rMinFactor = 1e-8;  // collision floor is rMinFactor * r0

    void validate() const;     // throws InvalidParams
};

/*
 * Dense-output solution of the reduced system over [t0, t1].  Each accepted
 * step stores the quartic interpolant coefficients, so the state and its time
 * derivative can be queried at any t in the span without re-integration.
 */
class Trajectory {
public:
    double t0() const { return t0_; }
    double t1() const { return t1_; }
    ReducedState state(double t) const;
    ReducedState derivative(double t) const; // d/dt of every component
    std::int64_t step_count() const { return static_cast<std::int64_t>(steps_.size()); }
    std::int64_t rejected_count() const { return rejected_; }

private:
    struct Step {
        double t;                       // left endpoint
        double h;                       // step length
        std::array<double, 7> y0;       // = rcont1
        std::array<double, 7> rcont2, rcont3, rcont4, rcont5;
    };

    double t0_ = 0.0, t1_ = 0.0;
    std::vector<Step> steps_;
    std::int64_t rejected_ = 0;

    const Step& locate(double t) const;

    friend Trajectory integrate(const ProblemParams&, double, const ReducedState&,
                                double, double, const IntegratorOptions&);
};

/*
 * Integrate the 7-dimensional system from state0 over [t0, t1], t0 < t1, with
 * the Dormand-Prince 5(4) embedded pair and a PI step-size controller.  theta
 * rides along as thetadot = a/r^2 so the dense output covers it.
 *
 * Backward spans are the caller's job: reverse_state + negated a turns the
 * time-reversed problem into a forward one (see reverse_state below).
 *
 * Throws CollisionError, BudgetExceeded, StiffnessSuspected.
 */
Trajectory integrate(const ProblemParams& params, double a, const ReducedState& state0,
                     double t0, double t1, const IntegratorOptions& opts);

// The reflection t -> -t maps a solution with angular momentum a onto a
// solution with angular momentum -a whose velocities are flipped.  Integrating
// forward from reverse_state(y) with -a and reversing again is exact backward
// integration.
ReducedState reverse_state(const ReducedState& s);

/*
 * Root of a scalar functional of (t, state) inside the bracket [ta, tb],
 * located by bisection on the dense output (the bracket shrinks by 12 decades,
 * so the result is at interpolant accuracy).  Requires a sign change.
 */
double locate_event(const Trajectory& traj,
                    const std::function<double(double, const ReducedState&)>& functional,
                    double ta, double tb);

} // namespace hiphop

#endif
