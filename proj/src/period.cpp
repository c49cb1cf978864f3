#include "hiphop/period.hpp"

#include <algorithm>
#include <cmath>

namespace hiphop {

namespace {

// 16-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr int GL_N = 16;
constexpr double GL_X[GL_N] = {
    -0.9894009349916499326, -0.9445750230732325761, -0.8656312023878317439,
    -0.7554044083550030339, -0.6178762444026437484, -0.4580167776572273863,
    -0.2816035507792589132, -0.0950125098376374402,  0.0950125098376374402,
     0.2816035507792589132,  0.4580167776572273863,  0.6178762444026437484,
     0.7554044083550030339,  0.8656312023878317439,  0.9445750230732325761,
     0.9894009349916499326};
constexpr double GL_W[GL_N] = {
    0.0271524594117540949, 0.0622535239386478929, 0.0951585116824927848,
    0.1246289712555338721, 0.1495959888165767321, 0.1691565193950025382,
    0.1826034150449235889, 0.1894506104550684963, 0.1894506104550684963,
    0.1826034150449235889, 0.1691565193950025382, 0.1495959888165767321,
    0.1246289712555338721, 0.0951585116824927848, 0.0622535239386478929,
    0.0271524594117540949};

struct Regime {
    double cmag; // -c = 4mN/r0 - u^2 > 0
    double t1;
    double w1;   // the outer root of f(w) = -c in the w = sqrt(z^2+r0^2) variable
};

Regime regime(const ProblemParams& params, double u) {
    const double au = std::fabs(u);
    const double fourmN = 4.0 * params.m * params.N;
    const double uMax2 = fourmN / params.r0;
    // Compare against the rounded root, not the squares: sqrt(uMax2)^2 can
    // land just below uMax2, which would let u == uMax through as a bounded
    // orbit with an absurd period.
    if (!(au > 0.0) || !(au < std::sqrt(uMax2)))
        throw OutOfRegime("axial speed must satisfy 0 < |u| < uMax for a bounded oscillation");
    Regime rg;
    rg.cmag = uMax2 - u * u;
    // t1^2 = 16 m^2 N^2 / c^2 - r0^2 factored to avoid the small-u cancellation
    rg.t1 = (au / rg.cmag) * std::sqrt(params.r0 * (fourmN + params.r0 * rg.cmag));
    rg.w1 = fourmN / rg.cmag;
    return rg;
}

} // namespace

double turning_point(const ProblemParams& params, double u) {
    return regime(params, u).t1;
}

double period_T(const ProblemParams& params, double u) {
    const Regime rg = regime(params, u);
    if (rg.t1 < 1e-8 * params.r0)
        return derived_constants(params).T2Star;

    const double r02 = params.r0 * params.r0;
    // integrand in phi after z = t1 sin(phi):  sqrt(w (w1 + w) / |c|),
    // w = sqrt(z^2 + r0^2); the turning-point zeros cancel exactly.
    auto eval = [&](int npan) {
        double total = 0.0;
        const double width = M_PI / npan;
        for (int p = 0; p < npan; ++p) {
            const double mid = -M_PI / 2 + (p + 0.5) * width;
            const double hw = 0.5 * width;
            double acc = 0.0;
            for (int i = 0; i < GL_N; ++i) {
                const double phi = mid + hw * GL_X[i];
                const double zz = rg.t1 * std::sin(phi);
                const double w = std::sqrt(zz * zz + r02);
                acc += GL_W[i] * std::sqrt(w * (rg.w1 + w) / rg.cmag);
            }
            total += hw * acc;
        }
        return total;
    };

    double prev = eval(2);
    for (int npan = 4; npan <= (1 << 21); npan *= 2) {
        const double cur = eval(npan);
        if (std::fabs(cur - prev) <= 1e-11 * std::fabs(cur)) return cur;
        prev = cur;
    }
    throw Error("period quadrature failed to converge");
}

std::vector<PeriodSample> period_curve(const ProblemParams& params, std::vector<double> uGrid) {
    std::sort(uGrid.begin(), uGrid.end());
    std::vector<PeriodSample> out;
    out.reserve(uGrid.size());
    const double uMax2 = 4.0 * params.m * params.N / params.r0;
    for (double u : uGrid) {
        const double au = std::fabs(u);
        if (!(au > 0.0) || !(au < std::sqrt(uMax2))) continue; // out of regime, skip
        PeriodSample s;
        s.u = u;
        s.c = u * u - uMax2;
        s.t1 = turning_point(params, u);
        s.T = period_T(params, u);
        out.push_back(s);
    }
    return out;
}

double invert_period(const ProblemParams& params, double Ttarget) {
    const DerivedConstants dc = derived_constants(params);
    if (!(Ttarget > dc.T2Star))
        throw OutOfRegime("target half-period at or below the small-amplitude limit");

    double lo = 1e-9 * dc.uMax;         // T(lo) is T2Star to many digits
    double hi = 0.9 * dc.uMax;
    while (period_T(params, hi) < Ttarget) {
        hi = 0.5 * (hi + dc.uMax);       // walk toward the blow-up
        if (dc.uMax - hi < 1e-14 * dc.uMax)
            throw OutOfRegime("target half-period not reached below uMax");
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * dc.uMax; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (period_T(params, mid) < Ttarget)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace hiphop
