#pragma once

#include <string>

#include "hcbf/sim.hpp"

namespace hcbf::cli {

/// Trajectory CSV: header row, then one row per step with fields printed at
/// 17 significant digits so parsing reproduces the doubles exactly.
/// Columns: t,px,py,vx,vy,udx,udy,ux,uy then theta_k,h_k,cons_k,clear_k per
/// obstacle k.
std::string trajectory_csv(const TrajectoryLog& log);

/// Inverse of trajectory_csv (row data; status fields are not in the CSV).
TrajectoryLog parse_trajectory_csv(const std::string& text);

/// Writes text atomically: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace hcbf::cli
