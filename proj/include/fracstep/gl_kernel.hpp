#pragma once

#include "fracstep/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace fracstep {

/// Order of a Caputo derivative, restricted to (0, 1].
class FractionalOrder {
 public:
  explicit FractionalOrder(double alpha);

  double value() const noexcept { return alpha_; }

  friend bool operator==(FractionalOrder, FractionalOrder) = default;

 private:
  double alpha_;
};

/// Grünwald-Letnikov weights w_j = prod_{k<j} (k - alpha) / (k + 1) and their
/// partial sums A_n = sum_{j<=n} w_j. Immutable once built.
///
/// For 0 < alpha <= 1 the weights satisfy w_0 = 1, w_j <= 0 for j >= 1, and
/// A_n equals the order-(alpha - 1) weight, so A_n > 0 and is nonincreasing.
class GLWeights {
 public:
  GLWeights(FractionalOrder alpha, std::size_t n_max);

  FractionalOrder alpha() const noexcept { return alpha_; }
  /// Largest index covered by the table.
  std::size_t n_max() const noexcept { return weights_.size() - 1; }

  double weight(std::size_t j) const { return weights_.at(j); }
  double cumsum(std::size_t n) const { return cumsum_.at(n); }

  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> cumsums() const noexcept { return cumsum_; }

 private:
  FractionalOrder alpha_;
  std::vector<double> weights_;
  std::vector<double> cumsum_;
};

/// Builds the weight table by the multiplicative recurrence
/// w_j = w_{j-1} (j - 1 - alpha) / j, which stays finite for any n_max.
GLWeights gl_weights(FractionalOrder alpha, std::size_t n_max);

/// Samples of an m-dimensional path on the uniform grid t_j = t0 + j h.
struct SampledPath {
  SampledPath(double t0, double h, StateMatrix values);

  double t0;
  double h;
  StateMatrix values;  // (N + 1) x m

  std::size_t last_index() const noexcept { return static_cast<std::size_t>(values.rows()) - 1; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(values.cols()); }
};

/// Left discrete Caputo-GL derivative at node k:
///   h^{-alpha} sum_{r=0}^{k} w_r (x_{k-r} - x_0).
Vector discrete_caputo_gl(const SampledPath& path, const GLWeights& weights, std::size_t k);

/// Memory part of both schemes at step n:
///   x_0 A_n - sum_{j=1}^{n} w_j x_{n-j}  ==  x_0 - sum_{j=1}^{n} w_j (x_{n-j} - x_0).
/// The second form is what gets evaluated; it is exact on constant histories.
/// `history` must hold rows 0..n-1.
Vector memory_term(const GLWeights& weights, const Eigen::Ref<const StateMatrix>& history,
                   std::size_t n);

}  // namespace fracstep
