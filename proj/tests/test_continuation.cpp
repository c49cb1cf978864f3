#include <catch2/catch.hpp>

#include "hiphop/continuation.hpp"
#include "hiphop/errors.hpp"
#include "hiphop/model.hpp"
#include "hiphop/solver.hpp"

#include <cmath>

namespace {

const hiphop::ProblemParams& ref_params() {
    static hiphop::ProblemParams p(3, 1.0, 2.0);
    return p;
}

constexpr double kA1 = 0.581722, kB1 = 0.81081, kU1 = 1.96752, kT1 = 6.53474;
constexpr double kA2 = 1.37168, kB2 = 0.717282, kU2 = 1.73494, kT2 = 6.95831;

hiphop::Family small_family(double bMax, double stepInit, double stepMax) {
    hiphop::ContinuationOptions copts;
    copts.stepInit = stepInit;
    copts.stepMax = stepMax;
    hiphop::NewtonOptions nopts;
    hiphop::IntegratorOptions iopts;
    return hiphop::continue_family(ref_params(), 1, bMax, copts, nopts, iopts);
}

} // namespace

TEST_CASE("continuation options are validated", "[continuation]") {
    hiphop::ContinuationOptions opts;
    REQUIRE_NOTHROW(opts.validate());
    opts.stepGrow = 1.0;
    REQUIRE_THROWS_AS(opts.validate(), hiphop::InvalidParams);
    opts.stepGrow = 1.5;
    opts.stepMin = 0.0;
    REQUIRE_THROWS_AS(opts.validate(), hiphop::InvalidParams);
    opts.stepMin = 1e-7;
    opts.stepMax = 1e-4; // below stepInit
    REQUIRE_THROWS_AS(opts.validate(), hiphop::InvalidParams);
}

TEST_CASE("a zero-width family is just the seed", "[continuation]") {
    const auto& p = ref_params();
    auto dc = hiphop::derived_constants(p);
    auto fam = small_family(0.0, 1e-3, 0.05);

    REQUIRE(fam.points.size() == 1);
    REQUIRE(fam.k == 1);
    REQUIRE(fam.points[0].b == 0.0);
    REQUIRE(fam.points[0].converged);
    REQUIRE(fam.points[0].a == Approx(dc.aStar).epsilon(1e-12));
    REQUIRE(fam.points[0].T == Approx(dc.T1Star).epsilon(1e-12));
    REQUIRE(fam.points[0].u == Approx(0.91490246).epsilon(1e-6));
    REQUIRE(fam.stepHistory.empty());
}

TEST_CASE("the family grows away from the planar seed", "[continuation]") {
    const auto& p = ref_params();
    auto dc = hiphop::derived_constants(p);
    const double bMax = 0.05;
    auto fam = small_family(bMax, 1e-3, 0.05);

    REQUIRE(fam.points.size() >= 5);
    REQUIRE(fam.points.front().b == 0.0);
    REQUIRE(fam.points.back().b == Approx(bMax).margin(1e-15));

    double prevB = -1.0;
    for (const auto& pt : fam.points) {
        REQUIRE(pt.b > prevB);
        if (prevB >= 0.0) REQUIRE(pt.b - prevB <= 0.05 + 1e-12);
        prevB = pt.b;

        REQUIRE(pt.converged);
        REQUIRE(pt.report.residualNorm <= 1e-8);
        REQUIRE(pt.report.stateGap <= 1e-8);
        REQUIRE(pt.report.energyDrift <= 1e-9);
        REQUIRE(pt.k == 1);
    }

    REQUIRE(fam.points.front().a == Approx(dc.aStar).margin(1e-6));
    REQUIRE(fam.points.front().T == Approx(dc.T1Star).margin(1e-6));

    // every accepted step in the history corresponds to a family point
    std::size_t accepted = 0;
    for (const auto& rec : fam.stepHistory)
        if (rec.accepted) ++accepted;
    REQUIRE(accepted == fam.points.size() - 1);
}

TEST_CASE("coarse and fine continuation trace the same curve", "[continuation]") {
    const double bMax = 0.02;
    auto coarse = small_family(bMax, 1e-3, 4e-3);
    auto fine = small_family(bMax, 5e-4, 1e-3);
    REQUIRE(coarse.points.size() >= 3);
    REQUIRE(fine.points.size() > coarse.points.size());

    // linear interpolation of the coarse a(b) curve at the fine b values
    for (const auto& pt : fine.points) {
        const auto& cp = coarse.points;
        std::size_t i = 1;
        while (i + 1 < cp.size() && cp[i].b < pt.b) ++i;
        const double b0 = cp[i - 1].b, b1 = cp[i].b;
        if (pt.b < b0 || pt.b > b1) continue;
        const double w = (pt.b - b0) / (b1 - b0);
        const double aInterp = (1.0 - w) * cp[i - 1].a + w * cp[i].a;
        const double tInterp = (1.0 - w) * cp[i - 1].T + w * cp[i].T;
        REQUIRE(pt.a == Approx(aInterp).margin(1e-4));
        REQUIRE(pt.T == Approx(tInterp).margin(1e-4));
    }
}

TEST_CASE("the planar seed counts as a single shared circle", "[continuation]") {
    const auto& p = ref_params();
    hiphop::IntegratorOptions iopts;
    auto fam = small_family(0.0, 1e-3, 0.05);

    auto cls = hiphop::classify_choreography(p, fam.points[0], 1e-6, iopts);
    REQUIRE(cls.trajectoryCount == 1);
    REQUIRE(cls.matchError == 0.0);
    REQUIRE(cls.thetaAdvance >= 0.0);
    REQUIRE(cls.thetaAdvance < 2.0 * M_PI);
}

TEST_CASE("known orbits classify to their published curve counts", "[continuation]") {
    const auto& p = ref_params();
    hiphop::NewtonOptions nopts;
    hiphop::IntegratorOptions iopts;

    auto pt1 = hiphop::polish_point(p, {kA1, kB1, kU1, kT1}, 1, nopts, iopts);
    REQUIRE(pt1.converged);
    auto cls1 = hiphop::classify_choreography(p, pt1, 1e-2, iopts);
    REQUIRE(cls1.trajectoryCount == 1);
    REQUIRE(2 * p.N % cls1.trajectoryCount == 0);

    auto pt2 = hiphop::polish_point(p, {kA2, kB2, kU2, kT2}, 1, nopts, iopts);
    REQUIRE(pt2.converged);
    auto cls2 = hiphop::classify_choreography(p, pt2, 1e-2, iopts);
    REQUIRE(cls2.trajectoryCount == 3);
    REQUIRE(2 * p.N % cls2.trajectoryCount == 0);

    // the two orbits advance by different angles over one period
    REQUIRE(std::fabs(cls1.thetaAdvance - cls2.thetaAdvance) > 0.1);
}

TEST_CASE("an incommensurate rotation refuses to classify", "[continuation]") {
    const auto& p = ref_params();
    hiphop::NewtonOptions nopts;
    hiphop::IntegratorOptions iopts;

    auto pt = hiphop::polish_point(p, {kA1, kB1, kU1, kT1}, 1, nopts, iopts);
    pt.a += 0.02; // detune the rotation away from any multiple of pi/N
    REQUIRE_THROWS_AS(hiphop::classify_choreography(p, pt, 1e-6, iopts),
                      hiphop::Unclassifiable);
}
