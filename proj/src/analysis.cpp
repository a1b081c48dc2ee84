#include "fracstep/analysis.hpp"

#include "fracstep/validators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fracstep {

std::array<Complex, 2> eig2(const Eigen::Matrix2d& a) {
  const double half_tr = 0.5 * (a(0, 0) + a(1, 1));
  const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  const double disc = half_tr * half_tr - det;
  if (disc < 0.0) {
    const double im = std::sqrt(-disc);
    return {Complex(half_tr, im), Complex(half_tr, -im)};
  }
  // Larger-magnitude root first, the other from the product of roots.
  const double big = half_tr + std::copysign(std::sqrt(disc), half_tr);
  if (big == 0.0) return {Complex(0.0), Complex(0.0)};
  return {Complex(big), Complex(det / big)};
}

std::string_view to_string(Stability s) noexcept {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::marginal: return "marginal";
  }
  return "?";
}

std::string_view to_string(EquilibriumKind k) noexcept {
  switch (k) {
    case EquilibriumKind::trivial: return "trivial";
    case EquilibriumKind::semi_trivial: return "semi_trivial";
    case EquilibriumKind::interior: return "interior";
  }
  return "?";
}

Stability StabilityClassification::at(FractionalOrder alpha) const {
  if (degenerate || args.empty()) return Stability::marginal;
  const double threshold = alpha.value() * std::numbers::pi / 2.0;
  const double smallest = *std::min_element(args.begin(), args.end());
  if (smallest > threshold) return Stability::stable;
  if (smallest < threshold) return Stability::unstable;
  return Stability::marginal;
}

std::string StabilityClassification::real_sign_pattern() const {
  if (eigenvalues.empty() || degenerate) return degenerate ? "degenerate" : "";
  bool all_real = true, any_pos = false, any_neg = false, any_zero_re = false;
  for (const auto& l : eigenvalues) {
    all_real = all_real && l.imag() == 0.0;
    any_pos = any_pos || l.real() > 0.0;
    any_neg = any_neg || l.real() < 0.0;
    any_zero_re = any_zero_re || l.real() == 0.0;
  }
  if (all_real) {
    if (any_pos && any_neg) return "saddle";
    return any_pos ? "unstable node" : "stable node";
  }
  if (any_zero_re && !any_pos && !any_neg) return "center";
  if (any_pos && any_neg) return "mixed focus";
  return any_pos ? "unstable focus" : "stable focus";
}

StabilityClassification classify_eigenvalues(std::vector<Complex> eigenvalues) {
  StabilityClassification out;
  double scale = 0.0;
  for (const auto& l : eigenvalues) scale = std::max(scale, std::abs(l));
  for (const auto& l : eigenvalues) {
    if (std::abs(l) <= 1e-14 * (1.0 + scale)) out.degenerate = true;
    out.args.push_back(std::abs(std::arg(l)));
  }
  out.eigenvalues = std::move(eigenvalues);
  if (out.degenerate) {
    out.note = "zero eigenvalue: linearization is inconclusive";
    return out;
  }
  if (!out.args.empty()) {
    const double smallest = *std::min_element(out.args.begin(), out.args.end());
    if (smallest > 0.0 && smallest < std::numbers::pi / 2.0) {
      out.marginal_alpha = 2.0 * smallest / std::numbers::pi;
    }
  }
  return out;
}

StabilityClassification classify_stability(const Matrix& jacobian) {
  if (jacobian.rows() != jacobian.cols()) throw ParameterError("Jacobian must be square");
  if (jacobian.rows() != 2) {
    throw ParameterError("closed-form eigenvalues cover 2x2 Jacobians only; use classify_eigenvalues");
  }
  const Eigen::Matrix2d a = jacobian;
  const auto l = eig2(a);
  return classify_eigenvalues({l[0], l[1]});
}

PredatorPreyEquilibria predator_prey_equilibria(const PredatorPreyParams& p) {
  p.validate();
  PredatorPreyEquilibria eq;
  eq.P0 = Vector::Zero(2);
  eq.P1 = Vector{{p.K, 0.0}};
  eq.R0 = p.beta * p.K / ((1.0 + p.q1 * p.K) * (p.s0 + p.E));

  if (!(eq.R0 > 1.0)) {
    eq.p2_reason = "R0 <= 1";
    return eq;
  }
  const double denom = eq.R0 + p.q1 * p.K * (eq.R0 - 1.0);
  const double x = p.K / denom;
  const double y = p.s * eq.R0 * std::pow(1.0 + p.q1 * p.K, 2) * (eq.R0 - 1.0) / (p.q * denom * denom);
  if (x > p.K) {
    eq.p2_reason = "x* > K";
    return eq;
  }
  eq.P2 = Vector{{x, y}};
  eq.p2_reason = "R0 > 1";
  eq.p2_residual = predator_prey_system(p).full(*eq.P2).lpNorm<Eigen::Infinity>();
  return eq;
}

namespace {

Matrix jacobian_at(const DecomposedSystem& sys, const Vector& x) {
  if (sys.jacobian) return (*sys.jacobian)(x);
  return jacobian_fd(sys, x, 1e-6 * (1.0 + x.lpNorm<Eigen::Infinity>()));
}

EquilibriumReport make_point(const DecomposedSystem& sys, std::string label, EquilibriumKind kind,
                             const Vector& point, const std::vector<FractionalOrder>& alphas) {
  EquilibriumReport r;
  r.label = std::move(label);
  r.kind = kind;
  r.point = point;
  r.jacobian = jacobian_at(sys, point);
  r.stability = classify_stability(r.jacobian);
  for (auto a : alphas) r.verdicts.push_back(r.stability.at(a));
  return r;
}

}  // namespace

StabilityReport stability_report(const PredatorPreyParams& p, const std::vector<FractionalOrder>& alphas) {
  const auto sys = predator_prey_system(p);
  const auto eq = predator_prey_equilibria(p);

  StabilityReport rep;
  rep.params = p;
  rep.R0 = eq.R0;
  rep.alphas = alphas;
  rep.points.push_back(make_point(sys, "P0", EquilibriumKind::trivial, eq.P0, alphas));
  rep.points.push_back(make_point(sys, "P1", EquilibriumKind::semi_trivial, eq.P1, alphas));
  if (eq.P2) {
    auto r = make_point(sys, "P2", EquilibriumKind::interior, *eq.P2, alphas);
    r.reason = eq.p2_reason;
    rep.points.push_back(std::move(r));
  } else {
    EquilibriumReport r;
    r.label = "P2";
    r.kind = EquilibriumKind::interior;
    r.exists = false;
    r.reason = eq.p2_reason;
    rep.points.push_back(std::move(r));
  }

  const auto& p1 = rep.points[1];
  if (eq.R0 != 1.0) {
    const Stability expected = eq.R0 < 1.0 ? Stability::stable : Stability::unstable;
    for (auto v : p1.verdicts) rep.p1_consistent = rep.p1_consistent && v == expected;
  }
  return rep;
}

}  // namespace fracstep
