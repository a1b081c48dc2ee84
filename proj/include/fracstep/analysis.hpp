#pragma once

#include "fracstep/gl_kernel.hpp"
#include "fracstep/models.hpp"

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fracstep {

using Complex = std::complex<double>;

/// Roots of l^2 - tr(A) l + det(A), via the sign-matched quadratic formula.
std::array<Complex, 2> eig2(const Eigen::Matrix2d& a);

enum class Stability { stable, unstable, marginal };
std::string_view to_string(Stability s) noexcept;

/// Linear stability of x' = J x in the Caputo sense, from the eigenvalues of J.
/// The origin is stable at order a iff every |arg l| > a pi / 2.
struct StabilityClassification {
  std::vector<Complex> eigenvalues;
  std::vector<double> args;             // |arg l_i| in [0, pi]
  std::optional<double> marginal_alpha;  // (2/pi) min |arg l|, when that lies in (0, 1)
  bool degenerate = false;               // some eigenvalue is zero
  std::string note;

  Stability at(FractionalOrder alpha) const;
  /// "saddle", "node/focus (sink)", ... from the real parts; empty when undetermined.
  std::string real_sign_pattern() const;
};

/// Classifies from supplied eigenvalues; works for any dimension.
StabilityClassification classify_eigenvalues(std::vector<Complex> eigenvalues);

/// Classifies a 2x2 Jacobian. Larger Jacobians need classify_eigenvalues.
StabilityClassification classify_stability(const Matrix& jacobian);

enum class EquilibriumKind { trivial, semi_trivial, interior };
std::string_view to_string(EquilibriumKind k) noexcept;

struct PredatorPreyEquilibria {
  Vector P0;
  Vector P1;
  std::optional<Vector> P2;  // set iff the interior point exists
  double R0 = 0.0;
  std::string p2_reason;
  double p2_residual = 0.0;  // |f(P2)|_inf, zero when P2 is absent
};

/// R0 = beta K / ((1 + q1 K)(s0 + E)); the interior point exists iff R0 > 1 and x* <= K.
PredatorPreyEquilibria predator_prey_equilibria(const PredatorPreyParams& p);

struct EquilibriumReport {
  std::string label;  // "P0", "P1", "P2"
  EquilibriumKind kind;
  bool exists = true;
  std::string reason;
  Vector point;
  Matrix jacobian;
  StabilityClassification stability;
  std::vector<Stability> verdicts;  // one per requested order
};

struct StabilityReport {
  PredatorPreyParams params;
  double R0 = 0.0;
  std::vector<FractionalOrder> alphas;
  std::vector<EquilibriumReport> points;  // P0, P1, P2 (P2 present with exists=false if absent)
  bool p1_consistent = true;              // P1 stable iff R0 < 1
};

StabilityReport stability_report(const PredatorPreyParams& p, const std::vector<FractionalOrder>& alphas);

}  // namespace fracstep
