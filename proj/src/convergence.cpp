#include "fracstep/convergence.hpp"

#include <cmath>
#include <future>
#include <string>

namespace fracstep {

namespace {

// r >= 1 with r an exact integer power of two, or 0 if not.
std::size_t dyadic_ratio(double coarse, double fine) {
  const double r = coarse / fine;
  int exponent = 0;
  const double mant = std::frexp(r, &exponent);
  if (mant != 0.5 || exponent < 1) return 0;
  return std::size_t{1} << (exponent - 1);
}

}  // namespace

double observed_rate(double coarse_error, double fine_error) {
  return std::log2(coarse_error / fine_error);
}

void validate_ladder(const std::vector<double>& ladder, double h_star) {
  if (!(h_star > 0.0)) throw ParameterError("reference step h* must be > 0");
  if (ladder.empty()) throw ParameterError("step ladder is empty");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const double h = ladder[i];
    if (!(h > 0.0)) throw ParameterError("ladder step " + std::to_string(h) + " must be > 0");
    if (i > 0 && h != 0.5 * ladder[i - 1]) {
      throw ParameterError("ladder step " + std::to_string(h) + " is not half of " +
                           std::to_string(ladder[i - 1]));
    }
    if (dyadic_ratio(h, h_star) == 0) {
      throw ParameterError("ladder step " + std::to_string(h) +
                           " is not a power-of-two multiple of h* = " + std::to_string(h_star));
    }
  }
}

Trajectory reference_solution(const DecomposedSystem& sys, Scheme scheme, FractionalOrder alpha,
                              const Vector& x0, double T, double h_star, const SolverOptions& opts) {
  return integrate(sys, scheme, alpha, x0, Grid::over(0.0, T, h_star), opts);
}

ErrorMetrics error_against_reference(const Trajectory& coarse, const Trajectory& reference) {
  if (coarse.dim() != reference.dim()) throw ParameterError("trajectory dimensions differ");
  if (coarse.grid.t0 != reference.grid.t0) throw ParameterError("trajectories start at different times");
  const std::size_t stride = dyadic_ratio(coarse.grid.h, reference.grid.h);
  if (stride == 0) {
    throw ParameterError("coarse step " + std::to_string(coarse.grid.h) +
                         " is not a power-of-two multiple of reference step " +
                         std::to_string(reference.grid.h));
  }
  if (coarse.grid.n_steps * stride > reference.grid.n_steps) {
    throw ParameterError("reference trajectory ends before the coarse one");
  }

  ErrorMetrics out;
  out.eps_per_component = Vector::Zero(static_cast<Eigen::Index>(coarse.dim()));
  for (std::size_t n = 0; n < coarse.size(); ++n) {
    const auto diff = (coarse.states.row(static_cast<Eigen::Index>(n)) -
                       reference.states.row(static_cast<Eigen::Index>(n * stride)))
                          .cwiseAbs()
                          .transpose();
    out.eps_per_component = out.eps_per_component.cwiseMax(diff);
  }
  out.xi = out.eps_per_component.maxCoeff();
  return out;
}

RateTable rate_table(const DecomposedSystem& sys, FractionalOrder alpha, const Vector& x0, double T,
                     const std::vector<double>& ladder, double h_star, const SolverOptions& opts) {
  validate_ladder(ladder, h_star);
  if (h_star > ladder.back()) throw ParameterError("h* must not exceed the smallest ladder step");

  const Trajectory reference = reference_solution(sys, Scheme::NSFD, alpha, x0, T, h_star, opts);

  std::vector<std::future<ErrorMetrics>> jobs;
  for (double h : ladder) {
    jobs.push_back(std::async(std::launch::async, [&, h] {
      const auto coarse = integrate(sys, Scheme::NSFD, alpha, x0, Grid::over(0.0, T, h), opts);
      return error_against_reference(coarse, reference);
    }));
  }

  RateTable table{alpha, ladder, {}, {}, {}, h_star};
  for (auto& job : jobs) {
    table.errors.push_back(job.get());
    table.xi.push_back(table.errors.back().xi);
  }
  for (std::size_t i = 1; i < table.xi.size(); ++i) {
    table.rho.push_back(observed_rate(table.xi[i - 1], table.xi[i]));
  }
  return table;
}

}  // namespace fracstep
