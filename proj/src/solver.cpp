#include "hiphop/solver.hpp"

#include <algorithm>
#include <cmath>

#include "hiphop/period.hpp"

namespace hiphop {

void NewtonOptions::validate() const {
    if (!(fdStep > 0.0 && fdStep < 1e-2)) throw InvalidParams("fdStep must be in (0, 1e-2)");
    if (!(tolResidual > 0.0)) throw InvalidParams("tolResidual must be positive");
    if (maxIter < 1) throw InvalidParams("maxIter must be at least 1");
    if (!(damping > 0.0 && damping < 1.0)) throw InvalidParams("damping must be in (0, 1)");
    if (maxHalvings < 0) throw InvalidParams("maxHalvings must be nonnegative");
}

namespace {

double inf_norm(const std::vector<double>& v) {
    double n = 0.0;
    for (double x : v) n = std::max(n, std::fabs(x));
    return n;
}

// Partial-pivot LU decomposition in place; perm holds the row order.
// Returns false on an exactly singular pivot.
bool lu_decompose(std::vector<double>& A, std::vector<int>& perm, int n) {
    perm.resize(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::fabs(A[perm[col] * n + col]);
        for (int row = col + 1; row < n; ++row) {
            const double v = std::fabs(A[perm[row] * n + col]);
            if (v > best) {
                best = v;
                piv = row;
            }
        }
        if (best == 0.0) return false;
        std::swap(perm[col], perm[piv]);
        const double pivval = A[perm[col] * n + col];
        for (int row = col + 1; row < n; ++row) {
            const double factor = A[perm[row] * n + col] / pivval;
            A[perm[row] * n + col] = factor;
            for (int j = col + 1; j < n; ++j)
                A[perm[row] * n + j] -= factor * A[perm[col] * n + j];
        }
    }
    return true;
}

void lu_solve(const std::vector<double>& A, const std::vector<int>& perm, int n,
              const std::vector<double>& rhs, std::vector<double>& x) {
    x.resize(n);
    for (int i = 0; i < n; ++i) {
        double s = rhs[perm[i]];
        for (int j = 0; j < i; ++j) s -= A[perm[i] * n + j] * x[j];
        x[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[i] -= A[perm[i] * n + j] * x[j];
        x[i] /= A[perm[i] * n + i];
    }
}

// inf-norm condition estimate via the explicit inverse (n is 2 or 3 here)
double condition_estimate(const std::vector<double>& J, const std::vector<double>& lu,
                          const std::vector<int>& perm, int n) {
    double normJ = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += std::fabs(J[i * n + j]);
        normJ = std::max(normJ, row);
    }
    std::vector<double> e(n), col(n), invRowSum(n, 0.0);
    for (int j = 0; j < n; ++j) {
        std::fill(e.begin(), e.end(), 0.0);
        e[j] = 1.0;
        lu_solve(lu, perm, n, e, col);
        for (int i = 0; i < n; ++i) invRowSum[i] += std::fabs(col[i]);
    }
    double normInv = 0.0;
    for (int i = 0; i < n; ++i) normInv = std::max(normInv, invRowSum[i]);
    return normJ * normInv;
}

} // namespace

NewtonResult newton_solve(const std::function<std::vector<double>(const std::vector<double>&)>& F,
                          std::vector<double> x0, const NewtonOptions& opts) {
    opts.validate();
    const int n = static_cast<int>(x0.size());

    std::vector<double> x = std::move(x0);
    std::vector<double> fx = F(x);
    if (static_cast<int>(fx.size()) != n)
        throw InvalidParams("newton_solve needs a square system");
    double fnorm = inf_norm(fx);

    NewtonResult res;
    res.iterations = 0;

    for (int iter = 0; iter < opts.maxIter; ++iter) {
        if (fnorm <= opts.tolResidual) break;

        // forward-difference Jacobian, column by column
        std::vector<double> J(n * n);
        for (int j = 0; j < n; ++j) {
            const double step = std::max(opts.fdStep * std::fabs(x[j]), 1e-8);
            std::vector<double> xp = x;
            xp[j] += step;
            const std::vector<double> fp = F(xp);
            for (int i = 0; i < n; ++i) J[i * n + j] = (fp[i] - fx[i]) / step;
        }

        std::vector<double> lu = J;
        std::vector<int> perm;
        if (!lu_decompose(lu, perm, n))
            throw SingularJacobian("exactly singular Jacobian in Newton iteration");
        if (condition_estimate(J, lu, perm, n) > 1e14)
            throw SingularJacobian("Jacobian condition estimate exceeds 1e14");

        std::vector<double> dx;
        lu_solve(lu, perm, n, fx, dx);

        // damped update: full step, then backtrack while the residual grows
        double lambda = 1.0;
        bool improved = false;
        std::vector<double> xTrial(n), fTrial;
        for (int half = 0; half <= opts.maxHalvings; ++half) {
            for (int i = 0; i < n; ++i) xTrial[i] = x[i] - lambda * dx[i];
            bool evalOk = true;
            double trialNorm = 0.0;
            try {
                fTrial = F(xTrial);
                trialNorm = inf_norm(fTrial);
            } catch (const Error&) {
                evalOk = false; // stepped somewhere unevaluable; shorten
            }
            if (evalOk && trialNorm < fnorm) {
                x = xTrial;
                fx = fTrial;
                fnorm = trialNorm;
                improved = true;
                break;
            }
            lambda *= opts.damping;
        }
        ++res.iterations;
        if (!improved)
            throw NoProgress("damping exhausted without residual decrease");
    }

    res.x = std::move(x);
    res.residualNorm = fnorm;
    res.converged = fnorm <= opts.tolResidual;
    return res;
}

void solve_primaries(const ProblemParams& params, double b, double& a, double& T,
                     const NewtonOptions& nopts, const IntegratorOptions& iopts) {
    auto F = [&](const std::vector<double>& x) {
        const auto r = residual2_primaries(params, x[0], b, x[1], iopts);
        return std::vector<double>{r[0], r[1]};
    };
    NewtonResult res;
    try {
        res = newton_solve(F, {a, T}, nopts);
    } catch (const Error& e) {
        throw NewtonFailed("newton", std::string("primaries stage: ") + e.what());
    }
    if (!res.converged)
        throw NewtonFailed("newton", "primaries stage ran out of iterations");
    a = res.x[0];
    T = res.x[1];
}

double solve_massless_u(const ProblemParams& params, double a, double b, double Ttarget,
                        double u1, double u2, const NewtonOptions& nopts,
                        const IntegratorOptions& iopts) {
    auto Z = [&](double u) {
        return residual3(params, {a, b, u, Ttarget}, iopts)[2];
    };
    double f1 = Z(u1), f2 = Z(u2);
    if (f1 == 0.0) return u1;
    if (f2 == 0.0) return u2;
    if ((f1 > 0.0) == (f2 > 0.0))
        throw NoSignChange("axial residual has the same sign at both bracket endpoints");

    double lo = u1, hi = u2, flo = f1;
    for (int it = 0; it < 52; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = Z(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (std::fabs(fm) <= nopts.tolResidual && (hi - lo) < 1e-10 * std::fabs(mid)) break;
    }

    // Newton polish, clamped to the original bracket
    double u = 0.5 * (lo + hi);
    double fu = Z(u);
    for (int it = 0; it < nopts.maxIter && std::fabs(fu) > nopts.tolResidual; ++it) {
        const double step = nopts.fdStep * std::max(std::fabs(u), 1e-2);
        const double deriv = (Z(u + step) - fu) / step;
        if (deriv == 0.0) break;
        double uNext = u - fu / deriv;
        uNext = std::clamp(uNext, u1, u2);
        const double fNext = Z(uNext);
        if (std::fabs(fNext) >= std::fabs(fu)) break;
        u = uNext;
        fu = fNext;
    }
    if (std::fabs(fu) > nopts.tolResidual)
        throw NewtonFailed("bracket", "axial stage failed to reach the residual tolerance");
    return u;
}

namespace {

// Scan Z(u) over the bracket grid and return the sign-change intervals.
std::vector<std::pair<double, double>> scan_for_brackets(
        const ProblemParams& params, double a, double b, double Ttarget,
        double uLo, double uHi, int nGrid, const IntegratorOptions& iopts) {
    std::vector<std::pair<double, double>> brackets;
    double uPrev = uLo;
    double fPrev = residual3(params, {a, b, uPrev, Ttarget}, iopts)[2];
    for (int i = 1; i < nGrid; ++i) {
        const double u = uLo + (uHi - uLo) * i / (nGrid - 1);
        const double f = residual3(params, {a, b, u, Ttarget}, iopts)[2];
        if ((fPrev > 0.0) != (f > 0.0) || fPrev == 0.0)
            brackets.emplace_back(uPrev, u);
        uPrev = u;
        fPrev = f;
    }
    return brackets;
}

} // namespace

SolutionPoint solve_point(const ProblemParams& params, double b, int k,
                          const NewtonOptions& nopts, const IntegratorOptions& iopts,
                          bool polish, const PointHints* hints) {
    if (k < 1) throw InvalidParams("period multiple k must be at least 1");
    const DerivedConstants dc = derived_constants(params);

    // stage 1: primaries
    double a = (hints && hints->valid) ? hints->a : dc.aStar;
    double T1 = (hints && hints->valid) ? hints->T : dc.T1Star;
    solve_primaries(params, b, a, T1, nopts, iopts);
    const double Ttarget = k * T1;

    // stage 2: axial speed, smallest sign change first
    std::vector<std::pair<double, double>> brackets;
    if (hints && hints->valid) {
        const double halfWin = 0.08 * dc.uMax;
        const double lo = std::max(0.02 * dc.uMax, hints->u - halfWin);
        const double hi = std::min(0.995 * dc.uMax, hints->u + halfWin);
        brackets = scan_for_brackets(params, a, b, Ttarget, lo, hi, 9, iopts);
    }
    if (brackets.empty())
        brackets = scan_for_brackets(params, a, b, Ttarget, 0.05 * dc.uMax, 0.98 * dc.uMax,
                                     16, iopts);
    if (brackets.empty())
        throw NewtonFailed("bracket", "no sign change of the axial residual in the scan window");

    double u = solve_massless_u(params, a, b, Ttarget, brackets[0].first, brackets[0].second,
                                nopts, iopts);

    SolutionPoint pt;
    pt.b = b;
    pt.k = k;
    for (std::size_t i = 1; i < brackets.size(); ++i)
        pt.otherBracketUs.push_back(0.5 * (brackets[i].first + brackets[i].second));

    double T = Ttarget;
    int iterations = 0;

    // stage 3: reconcile (a, u, T) against the fully coupled residual
    if (polish) {
        auto F = [&](const std::vector<double>& x) {
            const auto r = residual3(params, {x[0], b, x[1], x[2]}, iopts);
            return std::vector<double>{r[0], r[1], r[2]};
        };
        NewtonResult res;
        try {
            res = newton_solve(F, {a, u, T}, nopts);
        } catch (const Error& e) {
            throw NewtonFailed("newton", std::string("joint polish: ") + e.what());
        }
        if (!res.converged)
            throw NewtonFailed("newton", "joint polish ran out of iterations");
        a = res.x[0];
        u = res.x[1];
        T = res.x[2];
        iterations = res.iterations;
    }

    pt.a = a;
    pt.u = u;
    pt.T = T;
    pt.iterations = iterations;

    const auto res3 = residual3(params, {a, b, u, T}, iopts);
    pt.residual = res3;
    pt.report = verify_periodicity(params, {a, b, u, T}, iopts);
    pt.converged = std::max({std::fabs(res3[0]), std::fabs(res3[1]), std::fabs(res3[2])})
                   <= nopts.tolResidual;
    return pt;
}

SolutionPoint polish_point(const ProblemParams& params, const ShootingPoint& seed, int k,
                           const NewtonOptions& nopts, const IntegratorOptions& iopts) {
    auto F = [&](const std::vector<double>& x) {
        const auto r = residual3(params, {x[0], seed.b, x[1], x[2]}, iopts);
        return std::vector<double>{r[0], r[1], r[2]};
    };
    NewtonResult res;
    try {
        res = newton_solve(F, {seed.a, seed.u, seed.T}, nopts);
    } catch (const Error& e) {
        throw NewtonFailed("newton", std::string("polish: ") + e.what());
    }

    SolutionPoint pt;
    pt.a = res.x[0];
    pt.b = seed.b;
    pt.u = res.x[1];
    pt.T = res.x[2];
    pt.k = k;
    pt.iterations = res.iterations;
    const auto res3 = residual3(params, {pt.a, pt.b, pt.u, pt.T}, iopts);
    pt.residual = res3;
    pt.report = verify_periodicity(params, {pt.a, pt.b, pt.u, pt.T}, iopts);
    pt.converged = res.converged;
    return pt;
}

} // namespace hiphop
