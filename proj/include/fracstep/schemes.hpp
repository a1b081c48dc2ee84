#pragma once

#include "fracstep/gl_kernel.hpp"
#include "fracstep/system.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace fracstep {

enum class Scheme { GL, NSFD };

std::string_view to_string(Scheme s) noexcept;
Scheme parse_scheme(std::string_view text);

/// Uniform grid t_n = t0 + n h, n = 0..n_steps.
struct Grid {
  Grid(double t0, double h, std::size_t n_steps);

  /// Grid covering [t0, T]; (T - t0) / h must be an integer up to 1e-9 relative.
  static Grid over(double t0, double T, double h);

  double t0;
  double h;
  std::size_t n_steps;

  double t(std::size_t n) const noexcept { return t0 + static_cast<double>(n) * h; }
  double end() const noexcept { return t(n_steps); }
};

enum class NegativityPolicy { record, halt };

struct SolverOptions {
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  NegativityPolicy negativity_policy = NegativityPolicy::record;
  /// Evaluate f at x_{n-1} instead of solving the implicit GL equation.
  bool gl_explicit = false;

  void validate() const;
};

struct NegativityEvent {
  std::size_t step;
  int component;  // zero-based
  double value;
};

struct Trajectory {
  Grid grid;
  StateMatrix states;  // (n_steps + 1) x m
  Scheme scheme;
  FractionalOrder alpha;
  std::vector<NegativityEvent> negativity;

  std::size_t size() const noexcept { return static_cast<std::size_t>(states.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(states.cols()); }
  Vector state(std::size_t n) const { return states.row(static_cast<Eigen::Index>(n)).transpose(); }
};

/// One NSFD step:
///   x_n = (h^a f_+(x_{n-1}) + x_0 A_n - sum_{j=1}^{n} w_j x_{n-j}) / (1 + h^a f_-(x_{n-1})).
/// Nonnegative histories give nonnegative x_n for every h > 0. A nonpositive
/// denominator means f_- broke its sign contract and raises ContractViolation.
Vector nsfd_step(const DecomposedSystem& sys, const GLWeights& weights,
                 const Eigen::Ref<const StateMatrix>& history, double h, std::size_t n);

/// One GL step. By default solves
///   x_n + sum_{j=1}^{n} w_j x_{n-j} - x_0 A_n = h^a f(x_n)
/// by damped Newton from the predictor x_{n-1}; with opts.gl_explicit the
/// right-hand side is taken at x_{n-1} instead. Raises SolverError on
/// non-convergence.
Vector gl_step(const DecomposedSystem& sys, const GLWeights& weights,
               const Eigen::Ref<const StateMatrix>& history, double h, std::size_t n,
               const SolverOptions& opts);

/// Runs a scheme over the whole grid. The weight table is built once, or taken
/// from `shared_weights` when it covers the grid and has the same order.
Trajectory integrate(const DecomposedSystem& sys, Scheme scheme, FractionalOrder alpha,
                     const Vector& x0, const Grid& grid, const SolverOptions& opts = {},
                     std::shared_ptr<const GLWeights> shared_weights = nullptr);

}  // namespace fracstep
