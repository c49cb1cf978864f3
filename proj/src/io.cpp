#include "hiphop/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace hiphop {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

void append_point_json(std::string& s, const SolutionPoint& p, const std::string& indent) {
    s += indent + "{\n";
    s += indent + "  \"a\": " + format_double(p.a) + ",\n";
    s += indent + "  \"b\": " + format_double(p.b) + ",\n";
    s += indent + "  \"u\": " + format_double(p.u) + ",\n";
    s += indent + "  \"T\": " + format_double(p.T) + ",\n";
    s += indent + "  \"k\": " + std::to_string(p.k) + ",\n";
    s += indent + "  \"residual\": [" + format_double(p.residual[0]) + ", "
       + format_double(p.residual[1]) + ", " + format_double(p.residual[2]) + "],\n";
    s += indent + "  \"stateGap\": " + format_double(p.report.stateGap) + ",\n";
    s += indent + "  \"symmetryDefect\": " + format_double(p.report.symmetryDefect) + ",\n";
    s += indent + "  \"energyDrift\": " + format_double(p.report.energyDrift) + ",\n";
    s += indent + "  \"converged\": " + fmt_bool(p.converged) + ",\n";
    s += indent + "  \"iterations\": " + std::to_string(p.iterations) + "\n";
    s += indent + "}";
}

} // namespace

std::string trajectory_csv(const ProblemParams& params, double a, const Trajectory& traj,
                           int samples) {
    if (samples < 2) samples = 2;
    std::string s = "t,r,r_dot,d,d_dot,theta,z,z_dot,energy\n";
    for (int i = 0; i < samples; ++i) {
        const double t = traj.t0() + (traj.t1() - traj.t0()) * i / (samples - 1);
        const ReducedState st = traj.state(t);
        s += format_double(t) + "," + format_double(st.r) + "," + format_double(st.rdot) + ","
           + format_double(st.d) + "," + format_double(st.ddot) + "," + format_double(st.theta)
           + "," + format_double(st.z) + "," + format_double(st.zdot) + ","
           + format_double(reduced_energy(params, a, st)) + "\n";
    }
    return s;
}

std::string period_curve_csv(const std::vector<PeriodSample>& samples,
                             const std::vector<double>& requested) {
    std::string s = "u,c,t1,T\n";
    std::size_t si = 0;
    std::vector<double> sorted = requested;
    std::sort(sorted.begin(), sorted.end());
    for (double u : sorted) {
        if (si < samples.size() && samples[si].u == u) {
            const PeriodSample& ps = samples[si++];
            s += format_double(ps.u) + "," + format_double(ps.c) + "," + format_double(ps.t1)
               + "," + format_double(ps.T) + "\n";
        } else {
            s += format_double(u) + ",error,error,error\n";
        }
    }
    return s;
}

std::string solution_point_json(const SolutionPoint& p) {
    std::string s;
    append_point_json(s, p, "");
    s += "\n";
    return s;
}

std::string family_json(const Family& fam) {
    std::string s = "{\n";
    s += "  \"params\": {\"N\": " + std::to_string(fam.N) + ", \"m\": " + format_double(fam.m)
       + ", \"r0\": " + format_double(fam.r0) + "},\n";
    s += "  \"k\": " + std::to_string(fam.k) + ",\n";
    s += "  \"points\": [\n";
    for (std::size_t i = 0; i < fam.points.size(); ++i) {
        append_point_json(s, fam.points[i], "    ");
        s += (i + 1 < fam.points.size()) ? ",\n" : "\n";
    }
    s += "  ]\n}\n";
    return s;
}

std::string report_json(const PeriodicityReport& rep, bool verified) {
    std::string s = "{\n";
    s += "  \"residualNorm\": " + format_double(rep.residualNorm) + ",\n";
    s += "  \"stateGap\": " + format_double(rep.stateGap) + ",\n";
    s += "  \"thetaAdvance\": " + format_double(rep.thetaAdvance) + ",\n";
    s += "  \"symmetryDefect\": " + format_double(rep.symmetryDefect) + ",\n";
    s += "  \"energyDrift\": " + format_double(rep.energyDrift) + ",\n";
    s += "  \"verified\": " + fmt_bool(verified) + "\n";
    s += "}\n";
    return s;
}

std::string constants_json(const DerivedConstants& dc, int k) {
    std::string s = "{\n";
    s += "  \"alphaN\": " + format_double(dc.alphaN) + ",\n";
    s += "  \"gammaN\": " + format_double(dc.gammaN) + ",\n";
    s += "  \"aStar\": " + format_double(dc.aStar) + ",\n";
    s += "  \"T1Star\": " + format_double(dc.T1Star) + ",\n";
    s += "  \"T2Star\": " + format_double(dc.T2Star) + ",\n";
    s += "  \"uMax\": " + format_double(dc.uMax) + ",\n";
    s += "  \"k\": " + std::to_string(k) + "\n";
    s += "}\n";
    return s;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fputs(content.c_str(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw Error("write to '" + path + "' failed");
}

} // namespace hiphop
