#pragma once

#include <iosfwd>
#include <string>

#include "nplab/trajectory.hpp"

namespace nplab::io {

// Canonical trajectory schema, one row per record point:
//   t,eps_g,eps_g_stderr,Q,R,Q_kl,R_kl
// Numbers are written with 9 significant digits in the C locale; NaN
// fields become empty cells. Newline-terminated.
std::string emit_trajectory_csv(const Trajectory& traj);
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

// Inverse of the emitter: empty cells parse back to NaN; a non-empty
// stderr column populates stderr_points. Throws std::runtime_error with
// the offending line on malformed input.
Trajectory parse_trajectory_csv(std::istream& in);
Trajectory read_trajectory_csv(const std::string& path);

// 9-significant-digit decimal formatting used for all numeric output.
std::string format_number(double v);

}  // namespace nplab::io
