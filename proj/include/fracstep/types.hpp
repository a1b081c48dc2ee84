#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracstep {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
/// One state per row; row n holds x_n.
using StateMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Raised by models and validators when a caller supplies an invalid parameter set.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A decomposed system broke its sign contract (e.g. f_- < 0 on the orthant).
class ContractViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A time step could not be completed. Carries the index of the failing step.
class SolverError : public std::runtime_error {
 public:
  SolverError(std::size_t step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace fracstep
