#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <mbslie/integrate.hpp>

namespace mbsim {

/// 17 significant digits, independent of the global locale.
std::string format_double(double v);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

std::vector<std::string> trajectory_header(const mbslie::TrajectorySample& sample);

/// Header and one row per sample: t, absolute coordinates of every body,
/// stacked twists, energy, gnorm, gvnorm and the largest quaternion norm
/// error over bodies (0 for rotation-vector coordinates).
void write_trajectory_csv(std::ostream& out, const mbslie::TrajectoryRecord& rec);

}  // namespace mbsim
