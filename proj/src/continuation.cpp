#include "hiphop/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hiphop/period.hpp"

namespace hiphop {

void ContinuationOptions::validate() const {
    if (!(stepInit > 0.0)) throw InvalidParams("stepInit must be positive");
    if (!(stepGrow > 1.0)) throw InvalidParams("stepGrow must exceed 1");
    if (!(stepShrink > 0.0 && stepShrink < 1.0)) throw InvalidParams("stepShrink must be in (0, 1)");
    if (!(stepMin > 0.0 && stepMin <= stepInit)) throw InvalidParams("stepMin must be in (0, stepInit]");
    if (!(stepMax >= stepInit)) throw InvalidParams("stepMax must be at least stepInit");
    if (!(familyTol > 0.0)) throw InvalidParams("familyTol must be positive");
}

Family continue_family(const ProblemParams& params, int k, double bMax,
                       const ContinuationOptions& copts, const NewtonOptions& nopts,
                       const IntegratorOptions& iopts) {
    copts.validate();
    if (k < 1) throw InvalidParams("period multiple k must be at least 1");
    if (bMax < 0.0) throw InvalidParams("bMax must be nonnegative");

    const DerivedConstants dc = derived_constants(params);

    Family fam;
    fam.N = params.N;
    fam.m = params.m;
    fam.r0 = params.r0;
    fam.k = k;

    // seed at b = 0: circular primaries, axial speed from the period curve
    PointHints hints;
    hints.a = dc.aStar;
    hints.T = dc.T1Star;
    hints.u = invert_period(params, k * dc.T1Star);
    hints.valid = true;

    SolutionPoint seed;
    try {
        seed = solve_point(params, 0.0, k, nopts, iopts, true, &hints);
    } catch (const Error& e) {
        throw SeedFailure(std::string("b = 0 seed unsolvable: ") + e.what());
    }
    if (!seed.converged || seed.report.residualNorm > copts.familyTol)
        throw SeedFailure("b = 0 seed failed the family tolerance");
    fam.points.push_back(seed);

    if (bMax == 0.0) return fam;

    double step = copts.stepInit;
    double b = 0.0;
    while (b < bMax) {
        const double bNext = std::min(b + step, bMax);

        // secant extrapolation of (a, T1, u) from the last two points
        const SolutionPoint& last = fam.points.back();
        PointHints h;
        h.a = last.a;
        h.T = last.T / last.k;
        h.u = last.u;
        h.valid = true;
        if (fam.points.size() >= 2) {
            const SolutionPoint& prev = fam.points[fam.points.size() - 2];
            const double db = last.b - prev.b;
            if (db > 0.0) {
                const double w = (bNext - last.b) / db;
                h.a += w * (last.a - prev.a);
                h.T += w * (last.T - prev.T) / last.k;
                h.u += w * (last.u - prev.u);
            }
        }

        bool accepted = false;
        try {
            SolutionPoint pt = solve_point(params, bNext, k, nopts, iopts, true, &h);
            if (pt.converged && pt.report.residualNorm <= copts.familyTol) {
                fam.points.push_back(std::move(pt));
                accepted = true;
            }
        } catch (const Error&) {
            // fall through to the step controller
        }
        fam.stepHistory.push_back({bNext, step, accepted});

        if (accepted) {
            b = bNext;
            step = std::min(step * copts.stepGrow, copts.stepMax);
        } else {
            step *= copts.stepShrink;
            if (step < copts.stepMin) break; // fold or loss of convergence; report partial family
        }
    }
    return fam;
}

namespace {

struct Vec3 {
    double x, y, z;
};

Vec3 rotate_z(const Vec3& p, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * p.x - s * p.y, s * p.x + c * p.y, p.z};
}

// image of p under the j-th power of the screw symmetry (rotate pi/N, flip z)
Vec3 screw(const Vec3& p, int j, int N) {
    Vec3 q = rotate_z(p, j * M_PI / N);
    if (j % 2 != 0) q.z = -q.z;
    return q;
}

double dist2(const Vec3& p, const Vec3& q) {
    const double dx = p.x - q.x, dy = p.y - q.y, dz = p.z - q.z;
    return dx * dx + dy * dy + dz * dz;
}

// distance from p to the polyline segment [a, b]
double dist_to_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
    const Vec3 ab{b.x - a.x, b.y - a.y, b.z - a.z};
    const double len2 = ab.x * ab.x + ab.y * ab.y + ab.z * ab.z;
    if (len2 == 0.0) return std::sqrt(dist2(p, a));
    double t = ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y + (p.z - a.z) * ab.z) / len2;
    t = std::clamp(t, 0.0, 1.0);
    const Vec3 proj{a.x + t * ab.x, a.y + t * ab.y, a.z + t * ab.z};
    return std::sqrt(dist2(p, proj));
}

} // namespace

ChoreographyClass classify_choreography(const ProblemParams& params, const SolutionPoint& point,
                                        double tol, const IntegratorOptions& iopts) {
    if (!(tol > 0.0)) throw InvalidParams("classification tolerance must be positive");
    const int twoN = 2 * params.N;

    const ReducedState s0 = initial_state(params, point.b, point.u);
    const Trajectory tr = integrate(params, point.a, s0, 0.0, 2.0 * point.T, iopts);
    const double rho = tr.state(2.0 * point.T).theta;
    const double twoPi = 2.0 * M_PI;
    double rhoMod = std::fmod(rho, twoPi);
    if (rhoMod < 0.0) rhoMod += twoPi;

    // sample body 1 over one period
    const int nBase = 2048;
    std::vector<Vec3> base(nBase);
    double dMax = 0.0;
    for (int i = 0; i < nBase; ++i) {
        const ReducedState s = tr.state(2.0 * point.T * i / nBase);
        base[i] = {s.r * std::cos(s.theta), s.r * std::sin(s.theta), s.d};
        dMax = std::max(dMax, std::fabs(s.d));
    }

    ChoreographyClass result;
    result.thetaAdvance = rhoMod;

    // planar case: all bodies ride one circle
    if (dMax < 1e-10 * params.r0) {
        result.trajectoryCount = 1;
        result.matchError = 0.0;
        return result;
    }

    // the angle advanced per period must be commensurate with the body spacing
    const double spacing = M_PI / params.N;
    const long q = std::lround(rho / spacing);
    const double residue = std::fabs(rho - q * spacing);
    if (residue > tol)
        throw Unclassifiable(residue,
                             "angle advance per period is not commensurate with the body spacing");

    // body 1's closed curve: M period blocks, each the previous rotated by rho
    const long M = twoN / std::gcd(q, static_cast<long>(twoN));
    std::vector<Vec3> curve;
    curve.reserve(nBase * M);
    for (long blk = 0; blk < M; ++blk) {
        const double angle = blk * rho;
        for (int i = 0; i < nBase; ++i) curve.push_back(rotate_z(base[i], angle));
    }
    const int nCurve = static_cast<int>(curve.size());

    Vec3 centroid{0, 0, 0};
    for (const Vec3& p : curve) {
        centroid.x += p.x;
        centroid.y += p.y;
        centroid.z += p.z;
    }
    centroid.x /= nCurve;
    centroid.y /= nCurve;
    centroid.z /= nCurve;
    double scale = 0.0;
    for (const Vec3& p : curve) scale = std::max(scale, std::sqrt(dist2(p, centroid)));

    // test each symmetry power: does it map the curve onto itself?
    const int testStride = std::max(1, nCurve / 256);
    for (int s = 1; s <= twoN; ++s) {
        double worst = 0.0;
        for (int ti = 0; ti < nCurve; ti += testStride) {
            const Vec3 p = screw(curve[ti], s, params.N);
            int nearest = 0;
            double best = dist2(p, curve[0]);
            for (int i = 1; i < nCurve; ++i) {
                const double d2 = dist2(p, curve[i]);
                if (d2 < best) {
                    best = d2;
                    nearest = i;
                }
            }
            const int prev = (nearest - 1 + nCurve) % nCurve;
            const int next = (nearest + 1) % nCurve;
            const double d = std::min(dist_to_segment(p, curve[prev], curve[nearest]),
                                      dist_to_segment(p, curve[nearest], curve[next]));
            worst = std::max(worst, d / scale);
            if (worst > tol) break;
        }
        if (worst <= tol) {
            result.trajectoryCount = s;
            result.matchError = worst;
            return result;
        }
        if (s == twoN)
            throw Unclassifiable(worst, "curve does not close onto itself at any symmetry power");
    }
    throw Unclassifiable(0.0, "unreachable"); // the s = 2N case always returns or throws
}

} // namespace hiphop
