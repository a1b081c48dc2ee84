#pragma once

#include "fracstep/schemes.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fracstep {

/// 17 significant digits, '.' decimal point; parses back to the same double.
std::string format_real(double v);

/// Header `t,x1,...,xm`, one row per grid node, LF line endings.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
/// Single-row variant for a zero-length run.
void write_state_csv(std::ostream& out, double t0, const Vector& x0);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Reads a numeric CSV with a header row. Throws std::runtime_error with the
/// line number on malformed input.
CsvTable read_numeric_csv(std::istream& in);

}  // namespace fracstep
