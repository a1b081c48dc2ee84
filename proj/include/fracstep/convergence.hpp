#pragma once

#include "fracstep/schemes.hpp"

#include <vector>

namespace fracstep {

/// Max errors of a coarse run against a reference, taken on the coarse nodes.
struct ErrorMetrics {
  Vector eps_per_component;
  double xi = 0.0;  // max over components
};

/// Self-convergence study: errors xi(h) on a dyadic ladder and the observed
/// rates rho = log2(xi(2h) / xi(h)) between neighbouring steps.
struct RateTable {
  FractionalOrder alpha;
  std::vector<double> steps;  // strictly decreasing, each half the previous
  std::vector<ErrorMetrics> errors;
  std::vector<double> xi;
  std::vector<double> rho;  // one fewer entry than xi
  double reference_h = 0.0;
};

/// log2(coarse / fine).
double observed_rate(double coarse_error, double fine_error);

/// Checks the ladder is dyadic and every entry is a power-of-two multiple of
/// h_star. Throws ParameterError naming the offending step.
void validate_ladder(const std::vector<double>& ladder, double h_star);

/// Fine-step run over [0, T] used as surrogate truth.
Trajectory reference_solution(const DecomposedSystem& sys, Scheme scheme, FractionalOrder alpha,
                              const Vector& x0, double T, double h_star,
                              const SolverOptions& opts = {});

/// Compares on the coarse grid's nodes; those must be reference nodes.
ErrorMetrics error_against_reference(const Trajectory& coarse, const Trajectory& reference);

/// Runs the NSFD scheme over [0, T] on each ladder step (concurrently) and
/// tabulates errors against the h_star reference.
RateTable rate_table(const DecomposedSystem& sys, FractionalOrder alpha, const Vector& x0, double T,
                     const std::vector<double>& ladder, double h_star, const SolverOptions& opts = {});

}  // namespace fracstep
