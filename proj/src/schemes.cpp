#include "fracstep/schemes.hpp"

#include "fracstep/validators.hpp"

#include <Eigen/LU>

#include <cmath>
#include <string>

namespace fracstep {

std::string_view to_string(Scheme s) noexcept { return s == Scheme::GL ? "GL" : "NSFD"; }

Scheme parse_scheme(std::string_view text) {
  if (text == "GL" || text == "gl") return Scheme::GL;
  if (text == "NSFD" || text == "nsfd") return Scheme::NSFD;
  throw ParameterError("unknown scheme '" + std::string(text) + "' (expected GL or NSFD)");
}

Grid::Grid(double t0_, double h_, std::size_t n_steps_) : t0(t0_), h(h_), n_steps(n_steps_) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("grid step h must be > 0");
  if (n_steps < 1) throw ParameterError("grid needs at least one step");
}

Grid Grid::over(double t0, double T, double h) {
  if (!(h > 0.0)) throw ParameterError("grid step h must be > 0");
  if (!(T > t0)) throw ParameterError("grid needs T > t0");
  const double ratio = (T - t0) / h;
  const double n = std::round(ratio);
  if (std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio)) {
    throw ParameterError("T - t0 = " + std::to_string(T - t0) + " is not a multiple of h = " +
                         std::to_string(h));
  }
  return Grid(t0, h, static_cast<std::size_t>(n));
}

void SolverOptions::validate() const {
  if (!(newton_tol > 0.0)) throw ParameterError("newton_tol must be > 0");
  if (newton_max_iter < 1) throw ParameterError("newton_max_iter must be >= 1");
}

namespace {

void check_step_inputs(const DecomposedSystem& sys, const GLWeights& weights,
                       const Eigen::Ref<const StateMatrix>& history, std::size_t n) {
  if (n < 1) throw std::out_of_range("steps start at n = 1");
  if (static_cast<std::size_t>(history.rows()) < n) {
    throw std::out_of_range("history must hold states 0..n-1");
  }
  if (history.cols() != sys.dim) throw ParameterError("history dimension does not match system");
  if (weights.n_max() < n) throw std::out_of_range("weight table too short for step " + std::to_string(n));
}

Matrix system_jacobian(const DecomposedSystem& sys, const Vector& x) {
  if (sys.jacobian) return (*sys.jacobian)(x);
  return jacobian_fd(sys, x, 1e-6 * (1.0 + x.lpNorm<Eigen::Infinity>()));
}

}  // namespace

Vector nsfd_step(const DecomposedSystem& sys, const GLWeights& weights,
                 const Eigen::Ref<const StateMatrix>& history, double h, std::size_t n) {
  check_step_inputs(sys, weights, history, n);
  const double ha = std::pow(h, weights.alpha().value());
  const Vector prev = history.row(static_cast<Eigen::Index>(n - 1)).transpose();

  const Vector numer = ha * sys.eval_plus(prev) + memory_term(weights, history, n);
  const Vector denom = Vector::Ones(sys.dim) + ha * sys.eval_minus(prev);
  for (int i = 0; i < sys.dim; ++i) {
    if (!(denom[i] > 0.0)) {
      throw ContractViolation("NSFD denominator " + std::to_string(denom[i]) + " in component " +
                              std::to_string(i + 1) + " at step " + std::to_string(n) +
                              ": f- is negative on the orthant");
    }
  }
  return numer.cwiseQuotient(denom);
}

Vector gl_step(const DecomposedSystem& sys, const GLWeights& weights,
               const Eigen::Ref<const StateMatrix>& history, double h, std::size_t n,
               const SolverOptions& opts) {
  check_step_inputs(sys, weights, history, n);
  const double ha = std::pow(h, weights.alpha().value());
  const Vector memory = memory_term(weights, history, n);
  Vector x = history.row(static_cast<Eigen::Index>(n - 1)).transpose();

  if (opts.gl_explicit) return memory + ha * sys.full(x);

  // g(x) = x - memory - h^a f(x) = 0
  auto residual = [&](const Vector& v) -> Vector { return v - memory - ha * sys.full(v); };
  Vector r = residual(x);
  double rnorm = r.lpNorm<Eigen::Infinity>();
  const Matrix eye = Matrix::Identity(sys.dim, sys.dim);

  for (int it = 0; it < opts.newton_max_iter; ++it) {
    if (rnorm <= opts.newton_tol * std::max(1.0, x.lpNorm<Eigen::Infinity>())) return x;
    const Eigen::PartialPivLU<Matrix> lu(eye - ha * system_jacobian(sys, x));
    const Vector dx = lu.solve(r);
    if (!dx.allFinite()) break;

    // Halve the step until the residual drops; accept the full step otherwise.
    double lambda = 1.0;
    Vector trial = x - dx;
    Vector rt = residual(trial);
    for (int k = 0; k < 30 && !(rt.lpNorm<Eigen::Infinity>() < rnorm); ++k) {
      lambda *= 0.5;
      trial = x - lambda * dx;
      rt = residual(trial);
    }
    x = trial;
    r = rt;
    rnorm = r.lpNorm<Eigen::Infinity>();
  }
  if (rnorm <= opts.newton_tol * std::max(1.0, x.lpNorm<Eigen::Infinity>())) return x;
  throw SolverError(n, "GL Newton solve did not converge in " +
                           std::to_string(opts.newton_max_iter) + " iterations (residual " +
                           std::to_string(rnorm) + ")");
}

Trajectory integrate(const DecomposedSystem& sys, Scheme scheme, FractionalOrder alpha,
                     const Vector& x0, const Grid& grid, const SolverOptions& opts,
                     std::shared_ptr<const GLWeights> shared_weights) {
  opts.validate();
  if (x0.size() != sys.dim) {
    throw ParameterError("initial state has dimension " + std::to_string(x0.size()) +
                         ", system '" + sys.name + "' expects " + std::to_string(sys.dim));
  }
  if (scheme == Scheme::GL && !sys.has_full()) {
    throw ContractViolation("GL scheme needs the full right-hand side of '" + sys.name + "'");
  }

  std::shared_ptr<const GLWeights> weights = std::move(shared_weights);
  if (!weights || !(weights->alpha() == alpha) || weights->n_max() < grid.n_steps) {
    weights = std::make_shared<const GLWeights>(alpha, grid.n_steps);
  }

  Trajectory traj{grid, StateMatrix(grid.n_steps + 1, sys.dim), scheme, alpha, {}};
  traj.states.row(0) = x0.transpose();

  auto log_negative = [&](std::size_t n) {
    for (int i = 0; i < sys.dim; ++i) {
      const double v = traj.states(static_cast<Eigen::Index>(n), i);
      if (v < 0.0) {
        if (opts.negativity_policy == NegativityPolicy::halt) {
          throw SolverError(n, "component " + std::to_string(i + 1) + " went negative (" +
                                   std::to_string(v) + ")");
        }
        traj.negativity.push_back({n, i, v});
      }
    }
  };
  log_negative(0);

  for (std::size_t n = 1; n <= grid.n_steps; ++n) {
    const auto history = traj.states.topRows(static_cast<Eigen::Index>(n));
    Vector next;
    try {
      next = scheme == Scheme::NSFD ? nsfd_step(sys, *weights, history, grid.h, n)
                                    : gl_step(sys, *weights, history, grid.h, n, opts);
    } catch (const ContractViolation& e) {
      throw SolverError(n, e.what());
    }
    if (!next.allFinite()) throw SolverError(n, "non-finite state");
    traj.states.row(static_cast<Eigen::Index>(n)) = next.transpose();
    log_negative(n);
  }
  return traj;
}

}  // namespace fracstep
