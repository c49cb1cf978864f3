#include <catch2/catch.hpp>

#include "hiphop/errors.hpp"
#include "hiphop/model.hpp"
#include "hiphop/period.hpp"
#include "hiphop/solver.hpp"

#include <cmath>
#include <vector>

namespace {

const hiphop::ProblemParams& ref_params() {
    static hiphop::ProblemParams p(3, 1.0, 2.0);
    return p;
}

// Raw quadruples (solver input quality) and their refined values (frozen from
// an independent prototype of the same equations).
constexpr double kA1 = 0.581722, kB1 = 0.81081, kU1 = 1.96752, kT1 = 6.53474;
constexpr double kA1Ref = 0.58174564, kU1Ref = 1.96752226, kT1Ref = 6.53483100;
constexpr double kA2 = 1.37168, kB2 = 0.717282, kU2 = 1.73494, kT2 = 6.95831;
constexpr double kA2Ref = 1.37167204, kU2Ref = 1.73494265, kT2Ref = 6.95831228;

} // namespace

TEST_CASE("newton options are validated", "[solver]") {
    hiphop::NewtonOptions opts;
    REQUIRE_NOTHROW(opts.validate());
    opts.fdStep = 0.0;
    REQUIRE_THROWS_AS(opts.validate(), hiphop::InvalidParams);
    opts.fdStep = 1e-6;
    opts.damping = 1.0;
    REQUIRE_THROWS_AS(opts.validate(), hiphop::InvalidParams);
    opts.damping = 0.5;
    opts.maxIter = 0;
    REQUIRE_THROWS_AS(opts.validate(), hiphop::InvalidParams);
}

TEST_CASE("newton solves a scalar equation quadratically", "[solver]") {
    auto F = [](const std::vector<double>& x) {
        return std::vector<double>{x[0] * x[0] - 4.0};
    };

    hiphop::NewtonOptions opts;
    auto result = hiphop::newton_solve(F, {3.0}, opts);
    REQUIRE(result.converged);
    REQUIRE(result.x[0] == Approx(2.0).epsilon(1e-12));
    REQUIRE(result.residualNorm <= opts.tolResidual);

    // chain single iterations to expose the residual sequence
    hiphop::NewtonOptions one = opts;
    one.maxIter = 1;
    one.tolResidual = 1e-30;
    std::vector<double> residuals{5.0};
    std::vector<double> x{3.0};
    for (int i = 0; i < 6; ++i) {
        auto r = hiphop::newton_solve(F, x, one);
        x = r.x;
        residuals.push_back(r.residualNorm);
    }
    // monotone decrease until the floor, and a quadratic tail once small;
    // the iteration can land on residual 0.0 exactly and then stay there
    for (std::size_t i = 1; i < residuals.size(); ++i) {
        if (residuals[i - 1] == 0.0) {
            REQUIRE(residuals[i] == 0.0);
            continue;
        }
        REQUIRE(residuals[i] < residuals[i - 1]);
        if (residuals[i - 1] < 5e-2 && residuals[i] > 1e-13) {
            REQUIRE(residuals[i] <= 10.0 * residuals[i - 1] * residuals[i - 1]);
        }
    }
}

TEST_CASE("newton converges at entry without touching the guess", "[solver]") {
    auto F = [](const std::vector<double>& x) {
        return std::vector<double>{x[0] - 2.0, x[1] + 1.0};
    };
    hiphop::NewtonOptions opts;
    auto result = hiphop::newton_solve(F, {2.0, -1.0}, opts);
    REQUIRE(result.converged);
    REQUIRE(result.iterations == 0);
    REQUIRE(result.x[0] == 2.0);
    REQUIRE(result.x[1] == -1.0);
}

TEST_CASE("newton reports a singular Jacobian", "[solver]") {
    // duplicated rows make the finite-difference Jacobian exactly singular
    auto F = [](const std::vector<double>& x) {
        const double s = x[0] + x[1];
        return std::vector<double>{s, s};
    };
    hiphop::NewtonOptions opts;
    REQUIRE_THROWS_AS(hiphop::newton_solve(F, {0.3, -0.1}, opts),
                      hiphop::SingularJacobian);
}

TEST_CASE("newton gives up when damping cannot reduce the residual", "[solver]") {
    // |x| + 1 has no zero and a kink; every damped step stalls
    auto F = [](const std::vector<double>& x) {
        return std::vector<double>{std::fabs(x[0]) + 1.0};
    };
    hiphop::NewtonOptions opts;
    REQUIRE_THROWS_AS(hiphop::newton_solve(F, {1.0}, opts), hiphop::NoProgress);
}

TEST_CASE("primaries stage accepts the circular equilibrium unchanged", "[solver]") {
    const auto& p = ref_params();
    auto dc = hiphop::derived_constants(p);
    hiphop::NewtonOptions nopts;
    hiphop::IntegratorOptions iopts;

    double a = dc.aStar, T = dc.T1Star;
    hiphop::solve_primaries(p, 0.0, a, T, nopts, iopts);
    REQUIRE(a == Approx(dc.aStar).epsilon(1e-13));
    REQUIRE(T == Approx(dc.T1Star).epsilon(1e-13));
}

TEST_CASE("primaries stage converges off the equilibrium", "[solver]") {
    const auto& p = ref_params();
    auto dc = hiphop::derived_constants(p);
    hiphop::NewtonOptions nopts;
    hiphop::IntegratorOptions iopts;

    double a = dc.aStar, T = dc.T1Star;
    hiphop::solve_primaries(p, 0.1, a, T, nopts, iopts);
    auto res = hiphop::residual2_primaries(p, a, 0.1, T, iopts);
    REQUIRE(std::fabs(res[0]) <= 1e-10);
    REQUIRE(std::fabs(res[1]) <= 1e-10);
    // the planar problem is even in b, so the mirrored solve lands on the
    // same (a, T)
    double am = dc.aStar, Tm = dc.T1Star;
    hiphop::solve_primaries(p, -0.1, am, Tm, nopts, iopts);
    REQUIRE(am == Approx(a).margin(1e-12));
    REQUIRE(Tm == Approx(T).margin(1e-12));
}

TEST_CASE("the axial stage recovers the circular-orbit speed", "[solver]") {
    const auto& p = ref_params();
    auto dc = hiphop::derived_constants(p);
    hiphop::NewtonOptions nopts;
    hiphop::IntegratorOptions iopts;

    const double Ttarget = hiphop::period_T(p, 1.0);
    const double u = hiphop::solve_massless_u(p, dc.aStar, 0.0, Ttarget,
                                              0.9, 1.05, nopts, iopts);
    REQUIRE(u == Approx(1.0).epsilon(1e-8));
    REQUIRE(u >= 0.9);
    REQUIRE(u <= 1.05);
}

TEST_CASE("the axial stage demands a sign change", "[solver]") {
    const auto& p = ref_params();
    auto dc = hiphop::derived_constants(p);
    hiphop::NewtonOptions nopts;
    hiphop::IntegratorOptions iopts;
    const double Ttarget = hiphop::period_T(p, 1.0);
    REQUIRE_THROWS_AS(hiphop::solve_massless_u(p, dc.aStar, 0.0, Ttarget,
                                               2.0, 2.3, nopts, iopts),
                      hiphop::NoSignChange);
}

TEST_CASE("the staged solve handles the planar seed point", "[solver]") {
    const auto& p = ref_params();
    auto dc = hiphop::derived_constants(p);
    hiphop::NewtonOptions nopts;
    hiphop::IntegratorOptions iopts;

    auto pt = hiphop::solve_point(p, 0.0, 1, nopts, iopts);
    REQUIRE(pt.converged);
    REQUIRE(pt.b == 0.0);
    REQUIRE(pt.k == 1);
    REQUIRE(pt.a == Approx(dc.aStar).epsilon(1e-12));
    REQUIRE(pt.T == Approx(dc.T1Star).epsilon(1e-12));
    REQUIRE(pt.u == Approx(0.91490246).epsilon(1e-6));
    // the planar subsystem never leaves d = 0
    REQUIRE(std::fabs(pt.residual[1]) < 1e-15);
    REQUIRE(pt.report.stateGap <= 1e-8);
    REQUIRE(pt.report.energyDrift <= 1e-9);
}

TEST_CASE("hints steer the staged solve to a known orbit", "[solver]") {
    const auto& p = ref_params();
    hiphop::NewtonOptions nopts;
    hiphop::IntegratorOptions iopts;

    hiphop::PointHints hints{kA1Ref, kT1Ref, kU1Ref, true};
    auto pt = hiphop::solve_point(p, kB1, 1, nopts, iopts, true, &hints);
    REQUIRE(pt.converged);
    REQUIRE(pt.a == Approx(kA1Ref).margin(1e-7));
    REQUIRE(pt.u == Approx(kU1Ref).margin(1e-7));
    REQUIRE(pt.T == Approx(kT1Ref).margin(1e-7));
    REQUIRE(pt.report.stateGap <= 1e-8);
}

TEST_CASE("polish refines the first known quadruple", "[solver]") {
    const auto& p = ref_params();
    hiphop::NewtonOptions nopts;
    hiphop::IntegratorOptions iopts;

    auto pt = hiphop::polish_point(p, {kA1, kB1, kU1, kT1}, 1, nopts, iopts);
    REQUIRE(pt.converged);
    REQUIRE(pt.b == kB1);
    REQUIRE(pt.a == Approx(kA1Ref).margin(1e-6));
    REQUIRE(pt.u == Approx(kU1Ref).margin(1e-6));
    REQUIRE(pt.T == Approx(kT1Ref).margin(1e-6));
    REQUIRE(std::max({std::fabs(pt.residual[0]), std::fabs(pt.residual[1]),
                      std::fabs(pt.residual[2])}) <= 1e-10);
    REQUIRE(pt.report.stateGap <= 1e-8);
    REQUIRE(pt.report.symmetryDefect <= 1e-8);
    REQUIRE(pt.report.energyDrift <= 1e-9);
}

TEST_CASE("polish refines the second known quadruple", "[solver]") {
    const auto& p = ref_params();
    hiphop::NewtonOptions nopts;
    hiphop::IntegratorOptions iopts;

    auto pt = hiphop::polish_point(p, {kA2, kB2, kU2, kT2}, 1, nopts, iopts);
    REQUIRE(pt.converged);
    REQUIRE(pt.a == Approx(kA2Ref).margin(1e-6));
    REQUIRE(pt.u == Approx(kU2Ref).margin(1e-6));
    REQUIRE(pt.T == Approx(kT2Ref).margin(1e-6));
    REQUIRE(pt.report.stateGap <= 1e-8);
}

TEST_CASE("staged pieces are consistent with the one-stage solvers", "[solver]") {
    const auto& p = ref_params();
    auto dc = hiphop::derived_constants(p);
    hiphop::NewtonOptions nopts;
    hiphop::IntegratorOptions iopts;

    auto pt = hiphop::solve_point(p, 0.01, 1, nopts, iopts, /*polish=*/false);
    double a = dc.aStar, T1 = dc.T1Star;
    hiphop::solve_primaries(p, 0.01, a, T1, nopts, iopts);
    REQUIRE(pt.a == Approx(a).margin(1e-13));
    REQUIRE(pt.T == Approx(T1).margin(1e-13));
    REQUIRE(pt.converged);
    REQUIRE(pt.report.stateGap <= 1e-8);

    // the polished variant solves the same point
    auto ptPolished = hiphop::solve_point(p, 0.01, 1, nopts, iopts, true);
    REQUIRE(ptPolished.converged);
    REQUIRE(ptPolished.a == Approx(pt.a).margin(1e-8));
    REQUIRE(ptPolished.report.stateGap <= 1e-8);
}
