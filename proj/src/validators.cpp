#include "fracstep/validators.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>

namespace fracstep {

namespace {

void require_full(const DecomposedSystem& sys) {
  if (!sys.has_full()) {
    throw ContractViolation("system '" + sys.name + "' has no full evaluator to audit");
  }
}

void require_box(std::size_t n_samples, double box_max) {
  if (n_samples == 0) throw ParameterError("need at least one sample");
  if (!(box_max > 0.0)) throw ParameterError("box_max must be > 0");
}

Vector uniform_point(std::mt19937_64& rng, std::uniform_real_distribution<double>& u, int m) {
  Vector x(m);
  for (int i = 0; i < m; ++i) x[i] = u(rng);
  return x;
}

std::string describe(const Vector& x) {
  std::ostringstream os;
  os.precision(6);
  os << '(';
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ')';
  return os.str();
}

}  // namespace

ValidationReport validate_decomposition(const DecomposedSystem& sys, std::size_t n_samples,
                                        double box_max, std::uint64_t seed) {
  require_full(sys);
  require_box(n_samples, box_max);

  const int m = sys.dim;
  const double inf = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, box_max);

  ValidationReport rep;
  rep.samples = n_samples;
  double worst = 0.0;
  bool inconsistent = false;
  Vector min_plus = Vector::Constant(m, inf);
  Vector min_minus = Vector::Constant(m, inf);

  for (std::size_t k = 0; k < n_samples; ++k) {
    const Vector x = uniform_point(rng, u, m);
    const Vector fp = sys.eval_plus(x);
    const Vector fm = sys.eval_minus(x);
    const Vector f = sys.full(x);
    const double err = (f - (fp - x.cwiseProduct(fm))).lpNorm<Eigen::Infinity>();
    worst = std::max(worst, err);
    if (!(err <= kConsistencyTolerance * (1.0 + f.lpNorm<Eigen::Infinity>())) && !inconsistent) {
      inconsistent = true;
      rep.findings.push_back("f differs from f+ - x*f- by " + std::to_string(err) + " at " +
                             describe(x));
    }
    min_plus = min_plus.cwiseMin(fp);
    min_minus = min_minus.cwiseMin(fm);
  }

  // Condition (P)_1: f_i >= 0 wherever x >= 0 and x_i = 0.
  Vector min_face = Vector::Constant(m, inf);
  for (int i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < n_samples; ++k) {
      Vector x = uniform_point(rng, u, m);
      x[i] = 0.0;
      min_face[i] = std::min(min_face[i], sys.full(x)[i]);
    }
  }

  for (int i = 0; i < m; ++i) {
    const std::string c = std::to_string(i + 1);
    if (min_plus[i] < -kSignTolerance) rep.findings.push_back("negative f+ component " + c);
    if (min_minus[i] < -kSignTolerance) rep.findings.push_back("negative f- component " + c);
    if (min_face[i] < -kSignTolerance) {
      rep.findings.push_back("f" + c + " < 0 on face x" + c + " = 0 (positivity condition)");
    }
  }

  rep.max_consistency_error = worst;
  rep.min_plus = min_plus;
  rep.min_minus = min_minus;
  rep.min_boundary_f = min_face;
  rep.pass = rep.findings.empty();
  return rep;
}

ValidationReport check_quasi_monotone(const DecomposedSystem& sys, std::size_t n_samples,
                                      double box_max, std::uint64_t seed) {
  require_full(sys);
  require_box(n_samples, box_max);

  const int m = sys.dim;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, m - 1);

  ValidationReport rep;
  rep.samples = n_samples;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n_samples; ++k) {
    Vector y(m), x(m);
    for (int j = 0; j < m; ++j) {
      y[j] = box_max * u(rng);
      x[j] = y[j] + (box_max - y[j]) * u(rng);
    }
    const int i = pick(rng);
    x[i] = y[i];
    const double inc = sys.full(x)[i] - sys.full(y)[i];
    if (inc < worst) {
      worst = inc;
      if (inc < -kSignTolerance && rep.findings.empty()) {
        rep.findings.push_back("f" + std::to_string(i + 1) + " decreases by " +
                               std::to_string(-inc) + " from y=" + describe(y) + " to x=" +
                               describe(x));
      }
    }
  }
  rep.min_monotone_increment = worst;
  rep.pass = worst >= -kSignTolerance;
  return rep;
}

Matrix jacobian_fd(const DecomposedSystem& sys, const Vector& x, double step) {
  require_full(sys);
  if (!(step > 0.0)) throw ParameterError("finite-difference step must be > 0");
  const auto m = x.size();
  Matrix jac(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    Vector up = x, down = x;
    up[j] += step;
    down[j] -= step;
    jac.col(j) = (sys.full(up) - sys.full(down)) / (2.0 * step);
  }
  return jac;
}

}  // namespace fracstep
