#include "hiphop/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hiphop {

void IntegratorOptions::validate() const {
    if (!(relTol > 0.0 && relTol <= 1e-2)) throw InvalidParams("relTol must be in (0, 1e-2]");
    if (!(absTol > 0.0 && absTol <= 1e-2)) throw InvalidParams("absTol must be in (0, 1e-2]");
    if (maxStep < 0.0) throw InvalidParams("maxStep must be nonnegative");
    if (maxSteps < 1) throw InvalidParams("maxSteps must be at least 1");
    if (!(rMinFactor > 0.0)) throw InvalidParams("rMinFactor must be positive");
}

namespace {

using Vec7 = std::array<double, 7>;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// difference between the 5th and embedded 4th order weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights for the 5th interpolant coefficient
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

struct Rhs {
    const ProblemParams& params;
    double a;
    double rMin;

    void operator()(double t, const Vec7& y, Vec7& dy) const {
        if (y[0] <= rMin)
            throw CollisionError(t, "radius fell below the collision floor");
        ReducedState s = ReducedState::from_array(y);
        double fr, gd, hz;
        accelerations(params, a, s, fr, gd, hz);
        dy[0] = y[1];
        dy[1] = fr;
        dy[2] = y[3];
        dy[3] = gd;
        dy[4] = a / (y[0] * y[0]);
        dy[5] = y[6];
        dy[6] = hz;
    }
};

double error_norm(const Vec7& y0, const Vec7& y1, const Vec7& err,
                  double atol, double rtol) {
    double sum = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double sc = atol + rtol * std::max(std::fabs(y0[i]), std::fabs(y1[i]));
        const double q = err[i] / sc;
        sum += q * q;
    }
    return std::sqrt(sum / 7.0);
}

// Starting step size along the lines of the classical dopri5 routine.
double initial_step(const Rhs& rhs, double t0, const Vec7& y0, const Vec7& f0,
                    double tEnd, double atol, double rtol) {
    double dnf = 0.0, dny = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double sc = atol + rtol * std::fabs(y0[i]);
        dnf += (f0[i] / sc) * (f0[i] / sc);
        dny += (y0[i] / sc) * (y0[i] / sc);
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
    h = std::min(h, tEnd - t0);

    Vec7 y1, f1;
    for (int i = 0; i < 7; ++i) y1[i] = y0[i] + h * f0[i];
    rhs(t0 + h, y1, f1);
    double der2 = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double sc = atol + rtol * std::fabs(y0[i]);
        const double q = (f1[i] - f0[i]) / sc;
        der2 += q * q;
    }
    der2 = std::sqrt(der2) / h;

    const double der12 = std::max(der2, std::sqrt(dnf));
    double h1 = (der12 <= 1e-15) ? std::max(1e-6, h * 1e-3)
                                 : std::pow(0.01 / der12, 0.2);
    return std::min({100.0 * h, h1, tEnd - t0});
}

} // namespace

Trajectory integrate(const ProblemParams& params, double a, const ReducedState& state0,
                     double t0, double t1, const IntegratorOptions& opts) {
    opts.validate();
    if (!(t0 < t1)) throw InvalidParams("integration span needs t0 < t1");
    const double rMin = opts.rMinFactor * params.r0;
    if (state0.r <= rMin) throw CollisionError(t0, "initial radius at or below the collision floor");

    const Rhs rhs{params, a, rMin};
    const double atol = opts.absTol, rtol = opts.relTol;

    Trajectory traj;
    traj.t0_ = t0;
    traj.t1_ = t1;
    traj.steps_.reserve(256);

    Vec7 y = state0.as_array();
    Vec7 k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, errv;
    rhs(t0, y, k1);

    double t = t0;
    double h = initial_step(rhs, t0, y, k1, t1, atol, rtol);
    if (opts.maxStep > 0.0) h = std::min(h, opts.maxStep);

    const double safe = 0.9, beta = 0.04;
    const double alpha = 0.2 - beta * 0.75;
    double errold = 1e-4;
    double facmax = 10.0;
    std::int64_t attempts = 0;

    while (t < t1) {
        if (++attempts > opts.maxSteps)
            throw BudgetExceeded("step budget exhausted before reaching the end of the span");
        if (h < 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(t), 1.0))
            throw StiffnessSuspected(t, "step size underflow");

        const bool lastStep = (t + h >= t1);
        if (lastStep) h = t1 - t;

        for (int i = 0; i < 7; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, ytmp, k2);
        for (int i = 0; i < 7; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, ytmp, k3);
        for (int i = 0; i < 7; ++i) ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, ytmp, k4);
        for (int i = 0; i < 7; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, ytmp, k5);
        for (int i = 0; i < 7; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + h, ytmp, k6);
        for (int i = 0; i < 7; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(t + h, ynew, k7); // first stage of the next step (FSAL)

        for (int i = 0; i < 7; ++i)
            errv[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double err = error_norm(y, ynew, errv, atol, rtol);

        if (err <= 1.0) {
            // accept; store the interpolant for [t, t+h]
            Trajectory::Step st;
            st.t = t;
            st.h = h;
            st.y0 = y;
            for (int i = 0; i < 7; ++i) {
                const double dy = ynew[i] - y[i];
                st.rcont2[i] = dy;
                st.rcont3[i] = h * k1[i] - dy;
                st.rcont4[i] = dy - h * k7[i] - st.rcont3[i];
                st.rcont5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i]
                                    + d6 * k6[i] + d7 * k7[i]);
            }
            traj.steps_.push_back(st);

            t = lastStep ? t1 : t + h;
            y = ynew;
            k1 = k7;
            if (y[0] <= rMin) throw CollisionError(t, "radius fell below the collision floor");

            const double fac11 = std::pow(std::max(err, 1e-32), alpha);
            double fac = fac11 / std::pow(errold, beta);
            fac = std::max(1.0 / facmax, std::min(10.0, fac / safe));
            h = h / fac;
            if (opts.maxStep > 0.0) h = std::min(h, opts.maxStep);
            errold = std::max(err, 1e-4);
            facmax = 10.0;
        } else {
            const double fac11 = std::pow(err, alpha);
            h = h / std::min(10.0, fac11 / safe);
            facmax = 1.0; // no growth right after a rejection
            ++traj.rejected_;
        }
    }
    return traj;
}

const Trajectory::Step& Trajectory::locate(double t) const {
    const double slack = 1e-9 * (t1_ - t0_)
                       + 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(t0_), std::fabs(t1_));
    if (t < t0_ - slack || t > t1_ + slack)
        throw Error("trajectory queried outside its time span");
    // first step whose right endpoint covers t
    std::size_t lo = 0, hi = steps_.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (steps_[mid].t + steps_[mid].h < t)
            lo = mid + 1;
        else
            hi = mid;
    }
    return steps_[lo];
}

ReducedState Trajectory::state(double t) const {
    const Step& st = locate(t);
    const double s = std::clamp((t - st.t) / st.h, 0.0, 1.0);
    const double s1 = 1.0 - s;
    Vec7 y;
    for (int i = 0; i < 7; ++i)
        y[i] = st.y0[i]
             + s * (st.rcont2[i] + s1 * (st.rcont3[i] + s * (st.rcont4[i] + s1 * st.rcont5[i])));
    return ReducedState::from_array(y);
}

ReducedState Trajectory::derivative(double t) const {
    const Step& st = locate(t);
    const double s = std::clamp((t - st.t) / st.h, 0.0, 1.0);
    const double s1 = 1.0 - s;
    Vec7 dy;
    for (int i = 0; i < 7; ++i) {
        // d/ds of y0 + s*rc2 + s(1-s)*rc3 + s^2(1-s)*rc4 + s^2(1-s)^2*rc5
        dy[i] = (st.rcont2[i]
                 + (1.0 - 2.0 * s) * st.rcont3[i]
                 + s * (2.0 - 3.0 * s) * st.rcont4[i]
                 + 2.0 * s * s1 * (1.0 - 2.0 * s) * st.rcont5[i]) / st.h;
    }
    return ReducedState::from_array(dy);
}

ReducedState reverse_state(const ReducedState& s) {
    return {s.r, -s.rdot, s.d, -s.ddot, s.theta, s.z, -s.zdot};
}

double locate_event(const Trajectory& traj,
                    const std::function<double(double, const ReducedState&)>& functional,
                    double ta, double tb) {
    double fa = functional(ta, traj.state(ta));
    double fb = functional(tb, traj.state(tb));
    if (fa == 0.0) return ta;
    if (fb == 0.0) return tb;
    if ((fa > 0.0) == (fb > 0.0))
        throw NoSignChange("event functional has the same sign at both bracket ends");

    const double width0 = tb - ta;
    while (tb - ta > 1e-12 * width0) {
        const double tm = 0.5 * (ta + tb);
        if (tm <= ta || tm >= tb) break; // bracket at machine resolution
        const double fm = functional(tm, traj.state(tm));
        if (fm == 0.0) return tm;
        if ((fm > 0.0) == (fa > 0.0)) {
            ta = tm;
            fa = fm;
        } else {
            tb = tm;
        }
    }
    return 0.5 * (ta + tb);
}

} // namespace hiphop
