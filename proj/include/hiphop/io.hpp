#ifndef HIPHOP_IO_HPP
#define HIPHOP_IO_HPP

#include <string>

#include "hiphop/continuation.hpp"
#include "hiphop/flow.hpp"
#include "hiphop/period.hpp"

namespace hiphop {

// All numbers are emitted with up to 17 significant digits in the C locale,
// so identical inputs give byte-identical artifacts.
std::string format_double(double v);

std::string trajectory_csv(const ProblemParams& params, double a, const Trajectory& traj,
                           int samples);

std::string period_curve_csv(const std::vector<PeriodSample>& samples,
                             const std::vector<double>& requested);

std::string solution_point_json(const SolutionPoint& p);

std::string family_json(const Family& fam);

std::string report_json(const PeriodicityReport& rep, bool verified);

std::string constants_json(const DerivedConstants& dc, int k);

// Writes to path, or to stdout when path is empty.
void write_output(const std::string& path, const std::string& content);

} // namespace hiphop

#endif
