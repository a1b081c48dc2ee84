// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "fracstep/analysis.hpp"
#include "fracstep/convergence.hpp"
#include "fracstep/gl_kernel.hpp"
#include "fracstep/models.hpp"
#include "fracstep/schemes.hpp"

#include "../support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace fracstep {
namespace {

using Clock = std::chrono::steady_clock;

// Pinned tolerances and budgets.
constexpr int kRandomSystems = 1000;
constexpr std::size_t kRandomSteps = 100;
constexpr double kPositivityBudgetS = 60.0;
constexpr double kDriftRel = 1e-13;
constexpr std::size_t kDriftSteps = 1000;
constexpr double kFourDp = 5e-5;
constexpr double kStabilityBudgetS = 1.0;
constexpr double kRhoBelow = 0.1;
constexpr double kRhoAbove = 0.3;
constexpr double kConvergenceBudgetS = 300.0;
constexpr double kWeightTol = 1e-12;
constexpr double kWeightBudgetS = 1.0;
constexpr double kOrderLo = 0.8;
constexpr double kOrderHi = 1.2;
constexpr double kThroughputRatio = 5.0;
constexpr double kBranchOffset = 0.1;
constexpr double kBranchStartDist = 0.45;
constexpr double kBranchH = 0.1;
constexpr double kBranchT = 500.0;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Scenario {
  PredatorPreyParams p;
  double R0;
  bool has_p2;
  double x, y, alpha_bar;
};

const std::vector<Scenario>& scenarios() {
  static const std::vector<Scenario> s{
      {{0.2, 25, 1, 0.1, 2, 0.5, 1.3}, 7.9365, true, 0.9890, 0.2111, 0.9947},
      {{0.1, 25, 1, 2, 5, 0.7, 0.3}, 2.4510, true, 0.3333, 0.1644, 0.9501},
      {{0.1, 5, 1, 2, 5, 0.7, 0.3}, 2.2727, true, 0.3333, 0.1556, 0.9587},
      {{5, 5, 0.1, 2, 4, 0.5, 0.3}, 2.2727, true, 0.3333, 77.7778, 0.6576},
      {{0.1, 5, 1, 2, 15, 0.7, 0.3}, 6.8182, true, 0.0769, 0.1136, 0.9874},
      {{0.5, 5, 1, 2, 0.02, 0.7, 0.3}, 0.0091, false, 0, 0, 0},
  };
  return s;
}

Outcome nsfd_positivity() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> uh(0.0, 10.0), ux(0.0, 10.0), ua(0.0, 1.0);
  std::size_t negatives = 0, iterates = 0;
  for (int k = 0; k < kRandomSystems; ++k) {
    const auto sys = testing::random_positive_system(rng);
    double h = 0.0;
    while (h == 0.0) h = 10.0 - uh(rng);  // (0, 10]
    double a = 0.0;
    while (a == 0.0) a = 1.0 - ua(rng);
    const Vector x0{{ux(rng), ux(rng)}};
    const auto tr = integrate(sys, Scheme::NSFD, FractionalOrder(a), x0, Grid(0.0, h, kRandomSteps));
    negatives += static_cast<std::size_t>((tr.states.array() < 0.0).count());
    iterates += static_cast<std::size_t>(tr.states.size());
  }
  const double s = seconds_since(start);
  return {negatives == 0 && s < kPositivityBudgetS,
          std::to_string(negatives) + " negative of " + std::to_string(iterates) + " iterates, " + fmt("%.2f s", s)};
}

Outcome gl_positivity_failure() {
  SolverOptions expl;
  expl.gl_explicit = true;
  struct Case {
    const char* name;
    ToyModelParams p;
    Vector x0;
    double h;
  };
  const Case cases[] = {{"model1", {2, 1, 6}, Vector{{6, 2}}, 0.15}, {"model2", {2, 1, 0.2}, Vector{{0.3, 3.5}}, 0.4}};
  bool pass = true;
  std::string detail;
  for (const auto& c : cases) {
    const auto sys = toy_system(c.p);
    const Grid grid(0.0, c.h, static_cast<std::size_t>(std::floor(20.0 / c.h + 1e-9)));
    const auto gl = integrate(sys, Scheme::GL, FractionalOrder(0.8), c.x0, grid, expl);
    const auto nsfd = integrate(sys, Scheme::NSFD, FractionalOrder(0.8), c.x0, grid);
    pass = pass && !gl.negativity.empty() && nsfd.negativity.empty();
    detail += std::string(detail.empty() ? "" : "; ") + c.name + ": GL events=" + std::to_string(gl.negativity.size());
    if (!gl.negativity.empty()) detail += " (first at step " + std::to_string(gl.negativity.front().step) + ")";
    detail += ", NSFD events=" + std::to_string(nsfd.negativity.size());
  }
  return {pass, detail};
}

// P1 is run at every order. A floating-point P2 has a residual of a few ulps,
// which an unstable linearisation amplifies, so P2 is run at the orders below
// its marginal order.
Outcome equilibrium_exactness() {
  bool pass = true;
  double worst = 0.0;
  int checked = 0, skipped = 0;
  for (const auto& sc : scenarios()) {
    const auto sys = predator_prey_system(sc.p);
    const auto eq = predator_prey_equilibria(sc.p);
    std::optional<double> p2_bar;
    if (eq.P2) p2_bar = stability_report(sc.p, {}).points[2].stability.marginal_alpha;
    for (double a : {0.5, 0.8}) {
      std::vector<Vector> points{eq.P1};
      if (eq.P2 && (!p2_bar || a < *p2_bar)) points.push_back(*eq.P2);
      else if (eq.P2) ++skipped;
      for (const auto& x : points) {
        for (Scheme s : {Scheme::NSFD, Scheme::GL}) {
          const auto tr = integrate(sys, s, FractionalOrder(a), x, Grid(0.0, 0.1, kDriftSteps));
          double drift = 0.0;
          for (std::size_t n = 0; n < tr.size(); ++n) drift = std::max(drift, (tr.state(n) - x).lpNorm<Eigen::Infinity>());
          worst = std::max(worst, drift / x.lpNorm<Eigen::Infinity>());
          pass = pass && drift <= kDriftRel * x.lpNorm<Eigen::Infinity>();
          ++checked;
        }
      }
    }
  }
  return {pass, std::to_string(checked) + " runs, worst relative drift " + fmt("%.3g", worst) + ", " +
                    std::to_string(skipped) + " P2 order(s) above the marginal order not run"};
}

Outcome stability_regression() {
  const auto start = Clock::now();
  bool pass = true;
  std::string bad;
  for (std::size_t i = 0; i < scenarios().size(); ++i) {
    const auto& sc = scenarios()[i];
    const auto eq = predator_prey_equilibria(sc.p);
    bool ok = std::abs(eq.R0 - sc.R0) <= kFourDp && eq.P2.has_value() == sc.has_p2;
    if (ok && sc.has_p2) {
      const auto rep = stability_report(sc.p, {});
      const auto& st = rep.points[2].stability;
      ok = std::abs((*eq.P2)[0] - sc.x) <= kFourDp && std::abs((*eq.P2)[1] - sc.y) <= kFourDp &&
           st.marginal_alpha && std::abs(*st.marginal_alpha - sc.alpha_bar) <= kFourDp;
    }
    if (!ok) bad += " set" + std::to_string(i + 1);
    pass = pass && ok;
  }
  const double s = seconds_since(start);
  pass = pass && s < kStabilityBudgetS;
  return {pass, "6 triples" + (bad.empty() ? std::string(" match") : " mismatch:" + bad) + ", " + fmt("%.4f s", s)};
}

Outcome convergence_order() {
  const auto start = Clock::now();
  const auto sys = make_model("predator_prey");
  const std::vector<double> ladder{0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
  bool pass = true;
  std::string detail;
  for (double a : {0.5, 0.6, 0.7, 0.8, 0.9}) {
    const auto t = rate_table(sys, FractionalOrder(a), Vector{{0.05, 0.05}}, 1.0, ladder, std::ldexp(1.0, -12));
    bool decreasing = true;
    for (std::size_t i = 1; i < t.xi.size(); ++i) decreasing = decreasing && t.xi[i] < t.xi[i - 1];
    const double rho = t.rho.back();
    pass = pass && decreasing && rho >= a - kRhoBelow && rho <= a + kRhoAbove;
    detail += fmt(" a=%.1f", a) + fmt(":rho=%.4f", rho) + (decreasing ? "" : "(xi not decreasing)");
  }
  const double s = seconds_since(start);
  pass = pass && s < kConvergenceBudgetS;
  return {pass, "finest-pair" + detail + ", " + fmt("%.2f s", s)};
}

Outcome weight_identities() {
  const auto start = Clock::now();
  constexpr int kN = 200;
  std::size_t violations = 0;
  for (int i = 1; i <= 50; ++i) {
    const double a = i / 50.0;
    const auto w = gl_weights(FractionalOrder(a), kN);
    double running = w.weight(0);
    if (w.weight(0) != 1.0) ++violations;
    for (int j = 1; j <= kN; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      const double wj = w.weight(ju);
      if (wj > 0.0 || (a < 1.0 && !(wj < 0.0))) ++violations;
      if (std::abs(wj - w.weight(ju - 1) * (j - 1 - a) / j) > kWeightTol * std::abs(wj)) ++violations;
      running += wj;
      const double prod = testing::cumsum_product(a, j);
      if (std::abs(w.cumsum(ju) - running) > kWeightTol) ++violations;
      if (std::abs(w.cumsum(ju) - prod) > kWeightTol * std::max(prod, 1e-300)) ++violations;
    }
  }
  const double s = seconds_since(start);
  return {violations == 0 && s < kWeightBudgetS,
          std::to_string(violations) + " violations over 50 orders x 200 weights, " + fmt("%.4f s", s)};
}

Outcome operator_order() {
  bool pass = true;
  double lo = 1e9, hi = -1e9;
  for (double a : {0.3, 0.5, 0.8}) {
    double prev = 0.0;
    for (int e = 6; e <= 12; ++e) {
      const int n = 1 << e;
      const double h = 1.0 / n;
      StateMatrix v(n + 1, 1);
      for (int j = 0; j <= n; ++j) v(j, 0) = (j * h) * (j * h);
      const auto w = gl_weights(FractionalOrder(a), static_cast<std::size_t>(n));
      const double approx = discrete_caputo_gl(SampledPath(0.0, h, v), w, static_cast<std::size_t>(n))[0];
      const double err = std::abs(approx - testing::caputo_monomial(2.0, a, 1.0));
      if (e > 6) {
        const double r = std::log2(prev / err);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        pass = pass && r >= kOrderLo && r <= kOrderHi;
      }
      prev = err;
    }
  }
  return {pass, "log2 error ratios in [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "] for alpha 0.3/0.5/0.8"};
}

double best_time(const std::function<void()>& fn, int reps) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto start = Clock::now();
    fn();
    best = std::min(best, seconds_since(start));
  }
  return best;
}

Outcome throughput() {
  const auto sys = toy_system({2, 1, 6});
  const Vector x0{{15, 0.1}};
  const FractionalOrder a(0.8);
  const double t_nsfd = best_time([&] { integrate(sys, Scheme::NSFD, a, x0, Grid::over(0, 5, 0.01)); }, 3);
  const double t_gl = best_time([&] { integrate(sys, Scheme::GL, a, x0, Grid::over(0, 5, 0.001)); }, 3);
  const double ratio = t_gl / t_nsfd;
  return {ratio >= kThroughputRatio,
          "NSFD h=0.01 " + fmt("%.5f s", t_nsfd) + ", GL h=0.001 " + fmt("%.5f s", t_gl) + ", ratio " + fmt("%.1f", ratio)};
}

Outcome stable_branch() {
  const std::vector<Vector> dirs{Vector{{1.0, 0.0}}, Vector{{0.0, 1.0}}, Vector{{M_SQRT1_2, M_SQRT1_2}},
                                 Vector{{-M_SQRT1_2, M_SQRT1_2}}, Vector{{M_SQRT1_2, -M_SQRT1_2}},
                                 Vector{{-M_SQRT1_2, -M_SQRT1_2}}};
  bool pass = true;
  int runs = 0;
  std::string detail;
  for (std::size_t i = 0; i < scenarios().size(); ++i) {
    const auto& sc = scenarios()[i];
    if (!sc.has_p2 || !(sc.alpha_bar < 1.0)) continue;
    const auto eq = predator_prey_equilibria(sc.p);
    const auto rep = stability_report(sc.p, {});
    const double alpha = *rep.points[2].stability.marginal_alpha - kBranchOffset;
    const auto sys = predator_prey_system(sc.p);
    double worst = 0.0;
    for (const auto& d : dirs) {
      const Vector x0 = *eq.P2 + kBranchStartDist * d;
      if (x0.minCoeff() <= 0.0) continue;  // stay inside the open orthant
      const auto tr = integrate(sys, Scheme::NSFD, FractionalOrder(alpha), x0, Grid::over(0, kBranchT, kBranchH));
      const double d0 = (x0 - *eq.P2).norm();
      const double dT = (tr.state(tr.size() - 1) - *eq.P2).norm();
      worst = std::max(worst, dT / d0);
      pass = pass && dT < d0;
      ++runs;
    }
    detail += " set" + std::to_string(i + 1) + fmt(":%.3g", worst);
  }
  return {pass && runs > 0, std::to_string(runs) + " starts, worst dist(T)/dist(0) per set" + detail};
}

}  // namespace
}  // namespace fracstep

int main() {
  using namespace fracstep;
  struct Criterion {
    const char* name;
    Outcome (*fn)();
  };
  const Criterion criteria[] = {
      {"nsfd-unconditional-positivity", nsfd_positivity},
      {"gl-positivity-failure", gl_positivity_failure},
      {"equilibrium-exactness", equilibrium_exactness},
      {"stability-regression", stability_regression},
      {"convergence-order", convergence_order},
      {"gl-weight-identities", weight_identities},
      {"discrete-operator-order", operator_order},
      {"throughput-ordering", throughput},
      {"stable-branch-dynamics", stable_branch},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
