#include "fracstep/csv.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fracstep {

std::string format_real(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

namespace {

void write_header(std::ostream& out, std::size_t m) {
  out << 't';
  for (std::size_t i = 1; i <= m; ++i) out << ",x" << i;
  out << '\n';
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  write_header(out, traj.dim());
  std::string line;
  for (std::size_t n = 0; n < traj.size(); ++n) {
    line = format_real(traj.grid.t(n));
    for (std::size_t i = 0; i < traj.dim(); ++i) {
      line += ',';
      line += format_real(traj.states(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i)));
    }
    line += '\n';
    out << line;
  }
}

void write_state_csv(std::ostream& out, double t0, const Vector& x0) {
  write_header(out, static_cast<std::size_t>(x0.size()));
  out << format_real(t0);
  for (double v : x0) out << ',' << format_real(v);
  out << '\n';
}

CsvTable read_numeric_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string field; std::getline(ss, field, ',');) fields.push_back(field);

    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected " +
                               std::to_string(table.header.size()) + " fields, got " +
                               std::to_string(fields.size()));
    }
    std::vector<double> row;
    for (const auto& f : fields) {
      double v = 0.0;
      const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (res.ec != std::errc{} || res.ptr != f.data() + f.size()) {
        throw std::runtime_error("line " + std::to_string(lineno) + ": not a number: '" + f + "'");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw std::runtime_error("no header row");
  return table;
}

}  // namespace fracstep
