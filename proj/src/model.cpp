#include "hiphop/model.hpp"

#include <cmath>

namespace hiphop {

ProblemParams::ProblemParams(int N_, double m_, double r0_) : N(N_), m(m_), r0(r0_) {
    if (N < 1) throw InvalidParams("N must be a positive integer");
    if (!(m > 0.0) || !std::isfinite(m)) throw InvalidParams("m must be positive");
    if (!(r0 > 0.0) || !std::isfinite(r0)) throw InvalidParams("r0 must be positive");
    sinK.resize(2 * N - 1);
    wK.resize(2 * N - 1);
    for (int k = 1; k <= 2 * N - 1; ++k) {
        sinK[k - 1] = std::sin(k * M_PI / (2.0 * N));
        wK[k - 1] = (k % 2 == 1) ? 4.0 : 0.0;
    }
}

void sum_constants(int N, double& alphaN, double& gammaN) {
    if (N < 1) throw InvalidParams("N must be a positive integer");
    long double alpha = 0.0L, gamma = 0.0L;
    for (int k = 1; k <= 2 * N - 1; ++k) {
        long double s = sinl(k * M_PIl / (2.0L * N));
        gamma += 1.0L / s;
        if (k % 2 == 1) alpha += 4.0L / (s * s * s); // even k has a zero numerator
    }
    alphaN = static_cast<double>(alpha / 16.0L);
    gammaN = static_cast<double>(gamma / 4.0L);
}

DerivedConstants derived_constants(const ProblemParams& params) {
    DerivedConstants dc;
    sum_constants(params.N, dc.alphaN, dc.gammaN);
    dc.aStar = std::sqrt(params.m * dc.gammaN * params.r0);
    const double r03 = params.r0 * params.r0 * params.r0;
    dc.T1Star = M_PI * std::sqrt(r03 / (params.m * dc.alphaN));
    dc.T2Star = M_PI * std::sqrt(r03 / (2.0 * params.m * params.N));
    dc.uMax = std::sqrt(4.0 * params.m * params.N / params.r0);
    return dc;
}

int smallest_k(const DerivedConstants& dc) {
    int k = 1;
    while (!(dc.T2Star < k * dc.T1Star)) ++k;
    return k;
}

void accelerations(const ProblemParams& params, double a, const ReducedState& state,
                   double& rddot, double& dddot, double& zddot) {
    const double r = state.r, d = state.d, z = state.z;
    if (r <= 0.0) throw CollisionError(0.0, "acceleration evaluated at r <= 0");

    double fsum = 0.0, gsum = 0.0;
    const double r2 = r * r, d2 = d * d;
    for (std::size_t i = 0; i < params.sinK.size(); ++i) {
        const double s2 = params.sinK[i] * params.sinK[i];
        const double den = 4.0 * r2 * s2 + params.wK[i] * d2;
        const double den32 = den * std::sqrt(den);
        fsum += s2 / den32;
        if (params.wK[i] != 0.0) gsum += params.wK[i] / den32;
    }
    rddot = a * a / (r2 * r) - 2.0 * r * params.m * fsum;
    dddot = -(params.m * d / 2.0) * gsum;

    const double zm = z - d, zp = z + d;
    const double qm = zm * zm + r2, qp = zp * zp + r2;
    zddot = -params.m * params.N * (zm / (qm * std::sqrt(qm)) + zp / (qp * std::sqrt(qp)));
}

double potential(const ProblemParams& params, double r, double d) {
    if (r <= 0.0) throw CollisionError(0.0, "potential evaluated at r <= 0");
    double sum = 0.0;
    const double r2 = r * r, d2 = d * d;
    for (std::size_t i = 0; i < params.sinK.size(); ++i) {
        const double s2 = params.sinK[i] * params.sinK[i];
        sum += 1.0 / std::sqrt(4.0 * r2 * s2 + params.wK[i] * d2);
    }
    return -(params.m / 2.0) * sum;
}

double reduced_energy(const ProblemParams& params, double a, const ReducedState& state) {
    const double r = state.r;
    if (r <= 0.0) throw CollisionError(0.0, "energy evaluated at r <= 0");
    return 0.5 * (state.rdot * state.rdot + state.ddot * state.ddot)
         + a * a / (2.0 * r * r) + potential(params, r, state.d);
}

std::vector<std::array<double, 3>> embed_bodies(const ProblemParams& params,
                                                double r, double theta, double d) {
    if (r <= 0.0) throw CollisionError(0.0, "embedding evaluated at r <= 0");
    std::vector<std::array<double, 3>> bodies(2 * params.N);
    for (int j = 0; j < 2 * params.N; ++j) {
        const double phi = theta + j * M_PI / params.N;
        const double zj = (j % 2 == 0) ? d : -d;
        bodies[j] = {r * std::cos(phi), r * std::sin(phi), zj};
    }
    return bodies;
}

} // namespace hiphop
