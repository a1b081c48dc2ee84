#include "fracstep/gl_kernel.hpp"

#include <cmath>
#include <string>

namespace fracstep {

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ParameterError("fractional order must lie in (0, 1], got " + std::to_string(alpha));
  }
}

GLWeights::GLWeights(FractionalOrder alpha, std::size_t n_max)
    : alpha_(alpha), weights_(n_max + 1), cumsum_(n_max + 1) {
  const double a = alpha.value();
  weights_[0] = 1.0;
  cumsum_[0] = 1.0;
  for (std::size_t j = 1; j <= n_max; ++j) {
    const double jd = static_cast<double>(j);
    weights_[j] = weights_[j - 1] * (jd - 1.0 - a) / jd;
    // A_n = A_{n-1} (n - alpha) / n, the order-(alpha - 1) recurrence. Summing the
    // weights directly would cancel catastrophically once A_n is small.
    cumsum_[j] = cumsum_[j - 1] * (jd - a) / jd;
  }
}

GLWeights gl_weights(FractionalOrder alpha, std::size_t n_max) { return GLWeights(alpha, n_max); }

SampledPath::SampledPath(double t0_, double h_, StateMatrix values_)
    : t0(t0_), h(h_), values(std::move(values_)) {
  if (!(h > 0.0)) throw ParameterError("sampled path needs h > 0");
  if (values.rows() < 1 || values.cols() < 1) {
    throw ParameterError("sampled path needs at least one sample of dimension >= 1");
  }
}

Vector discrete_caputo_gl(const SampledPath& path, const GLWeights& weights, std::size_t k) {
  if (k > path.last_index()) {
    throw std::out_of_range("node " + std::to_string(k) + " beyond path end " +
                            std::to_string(path.last_index()));
  }
  if (k > weights.n_max()) {
    throw std::out_of_range("weight table covers 0.." + std::to_string(weights.n_max()) +
                            ", need " + std::to_string(k));
  }
  const auto w = weights.weights();
  const auto x0 = path.values.row(0);
  Vector acc = Vector::Zero(static_cast<Eigen::Index>(path.dim()));
  for (std::size_t r = 0; r <= k; ++r) {
    acc += w[r] * (path.values.row(static_cast<Eigen::Index>(k - r)) - x0).transpose();
  }
  return acc / std::pow(path.h, weights.alpha().value());
}

Vector memory_term(const GLWeights& weights, const Eigen::Ref<const StateMatrix>& history,
                   std::size_t n) {
  if (n == 0 || static_cast<std::size_t>(history.rows()) < n) {
    throw std::out_of_range("memory term at step " + std::to_string(n) + " needs rows 0..n-1");
  }
  if (n > weights.n_max()) {
    throw std::out_of_range("weight table too short for step " + std::to_string(n));
  }
  const auto m = history.cols();
  const auto w = weights.weights();
  const double* base = history.data();
  const auto stride = history.outerStride();
  const double* x0 = base;

  Vector acc = Vector::Zero(m);
  // j = n contributes w_n (x_0 - x_0) = 0 and is skipped.
  for (std::size_t j = 1; j < n; ++j) {
    const double* row = base + static_cast<Eigen::Index>(n - j) * stride;
    const double wj = w[j];
    for (Eigen::Index i = 0; i < m; ++i) acc[i] += wj * (row[i] - x0[i]);
  }
  Vector out(m);
  for (Eigen::Index i = 0; i < m; ++i) out[i] = x0[i] - acc[i];
  return out;
}

}  // namespace fracstep
