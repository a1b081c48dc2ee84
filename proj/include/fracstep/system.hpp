#pragma once

#include "fracstep/types.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>

namespace fracstep {

using VectorField = std::function<Vector(const Vector&)>;
using JacobianField = std::function<Matrix(const Vector&)>;

/// A right-hand side written as f(x) = f_+(x) - x .* f_-(x), where f_+ and f_-
/// are nonnegative on the nonnegative orthant. The sign contract is audited by
/// validate_decomposition, not enforced per call.
///
/// Evaluators must be pure; a system is shared read-only between solver runs.
struct DecomposedSystem {
  std::string name;
  int dim = 0;
  std::map<std::string, double> params;
  VectorField eval_plus;
  VectorField eval_minus;
  std::optional<VectorField> eval_full;
  std::optional<JacobianField> jacobian;

  bool has_full() const noexcept { return eval_full.has_value(); }

  /// f(x). Throws ContractViolation when the system carries no full evaluator.
  Vector full(const Vector& x) const;

  /// f_+(x) - x .* f_-(x), assembled from the two parts.
  Vector recombined(const Vector& x) const;
};

}  // namespace fracstep
