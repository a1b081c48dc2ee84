#pragma once

#include "fracstep/system.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fracstep {

inline constexpr double kDefaultBoxMax = 10.0;
inline constexpr double kConsistencyTolerance = 1e-10;
inline constexpr double kSignTolerance = 1e-12;

/// Outcome of a sampling audit. Fields not measured by a given check stay empty.
struct ValidationReport {
  bool pass = true;
  std::vector<std::string> findings;
  std::size_t samples = 0;

  // validate_decomposition
  std::optional<double> max_consistency_error;  // max |f - (f_+ - x .* f_-)|
  std::optional<Vector> min_plus;                // componentwise min of f_+
  std::optional<Vector> min_minus;               // componentwise min of f_-
  std::optional<Vector> min_boundary_f;          // min of f_i on the face x_i = 0

  // check_quasi_monotone
  std::optional<double> min_monotone_increment;  // min of f_i(x) - f_i(y)
};

/// Audits f = f_+ - x .* f_- and the sign contract on uniform samples of
/// [0, box_max]^m, then probes each boundary face x_i = 0 for f_i >= 0.
/// Deterministic under `seed`.
ValidationReport validate_decomposition(const DecomposedSystem& sys, std::size_t n_samples,
                                        double box_max, std::uint64_t seed);

/// Samples ordered pairs x >= y with x_i = y_i for one coordinate i and
/// reports the smallest f_i(x) - f_i(y). Passes iff that stays >= -1e-12.
ValidationReport check_quasi_monotone(const DecomposedSystem& sys, std::size_t n_samples,
                                      double box_max, std::uint64_t seed);

/// Central-difference Jacobian of the full right-hand side.
Matrix jacobian_fd(const DecomposedSystem& sys, const Vector& x, double step);

}  // namespace fracstep
