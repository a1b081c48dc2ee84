#include "fracstep/convergence.hpp"
#include "fracstep/models.hpp"

#include "../support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace fracstep {
namespace {

Trajectory hand_trajectory(double h, const StateMatrix& states) {
  return Trajectory{Grid(0.0, h, static_cast<std::size_t>(states.rows() - 1)), states, Scheme::NSFD,
                    FractionalOrder(0.5), {}};
}

TEST(ObservedRate, ExactHalving) { EXPECT_DOUBLE_EQ(observed_rate(4e-3, 2e-3), 1.0); }

TEST(ValidateLadder, AcceptsDyadicLadders) {
  EXPECT_NO_THROW(validate_ladder({0.125, 0.0625, 0.03125, 0.015625, 0.0078125}, std::ldexp(1.0, -12)));
  EXPECT_NO_THROW(validate_ladder({0.1, 0.05}, 0.05));
}

TEST(ValidateLadder, NamesOffendingStep) {
  try {
    validate_ladder({0.125, 0.0625, 0.03}, std::ldexp(1.0, -12));
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("0.03"), std::string::npos) << e.what();
  }
  try {
    validate_ladder({0.3, 0.15}, std::ldexp(1.0, -12));
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("0.3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(validate_ladder({}, 0.01), ParameterError);
  EXPECT_THROW(validate_ladder({0.1}, 0.0), ParameterError);
  EXPECT_THROW(validate_ladder({0.01}, 0.02), ParameterError);
}

TEST(ReferenceSolution, HasExpectedLengthAndAlignment) {
  const auto sys = make_model("predator_prey");
  const Vector x0{{0.05, 0.05}};
  const auto ref = reference_solution(sys, Scheme::NSFD, FractionalOrder(0.7), x0, 1.0, std::ldexp(1.0, -12));
  EXPECT_EQ(ref.size(), 4097u);
  EXPECT_EQ(ref.grid.t(2048), 0.5);
  const auto coarse = integrate(sys, Scheme::NSFD, FractionalOrder(0.7), x0, Grid::over(0, 1, 0.125));
  EXPECT_EQ(coarse.grid.t(4), ref.grid.t(2048));
}

TEST(ErrorAgainstReference, SelfComparisonIsZero) {
  const auto sys = make_model("toy");
  const auto tr = integrate(sys, Scheme::NSFD, FractionalOrder(0.6), Vector{{1, 1}}, Grid(0, 0.01, 100));
  const auto m = error_against_reference(tr, tr);
  EXPECT_EQ(m.xi, 0.0);
  EXPECT_EQ(m.eps_per_component, Vector::Zero(2));
}

TEST(ErrorAgainstReference, ConstantOffset) {
  StateMatrix a = StateMatrix::Zero(5, 2), b = StateMatrix::Zero(5, 2);
  b.col(1).setConstant(0.25);
  const auto m = error_against_reference(hand_trajectory(0.1, a), hand_trajectory(0.1, b));
  EXPECT_EQ(m.xi, 0.25);
  EXPECT_EQ(m.eps_per_component[0], 0.0);
}

TEST(ErrorAgainstReference, ThreeNodeHandExample) {
  StateMatrix coarse(3, 1), ref(5, 1);
  coarse << 0.0, 0.0, 0.0;
  ref << 0.1, 99.0, 0.3, -99.0, -0.2;
  // Coarse nodes sit at reference indices 0, 2, 4.
  const auto m = error_against_reference(hand_trajectory(0.5, coarse), hand_trajectory(0.25, ref));
  EXPECT_DOUBLE_EQ(m.xi, 0.3);
}

TEST(ErrorAgainstReference, RejectsMisalignedGrids) {
  const StateMatrix s = StateMatrix::Zero(4, 1);
  EXPECT_THROW(error_against_reference(hand_trajectory(0.3, s), hand_trajectory(0.1, StateMatrix::Zero(10, 1))),
               ParameterError);
  EXPECT_THROW(error_against_reference(hand_trajectory(0.2, s), hand_trajectory(0.1, StateMatrix::Zero(5, 1))),
               ParameterError);
}

TEST(RateTable, DegenerateReferenceGivesZeroError) {
  const auto t = rate_table(make_model("predator_prey"), FractionalOrder(0.8), Vector{{0.05, 0.05}}, 1.0,
                            {0.125}, 0.125);
  ASSERT_EQ(t.xi.size(), 1u);
  EXPECT_EQ(t.xi[0], 0.0);
  EXPECT_TRUE(t.rho.empty());
}

TEST(RateTable, TwoStepLadderGivesOneRate) {
  const auto t = rate_table(make_model("predator_prey"), FractionalOrder(0.8), Vector{{0.05, 0.05}}, 1.0,
                            {0.125, 0.0625}, std::ldexp(1.0, -10));
  EXPECT_EQ(t.rho.size(), 1u);
  EXPECT_DOUBLE_EQ(t.rho[0], std::log2(t.xi[0] / t.xi[1]));
}

TEST(RateTable, DefaultStudyRatesFollowOrder) {
  const auto sys = make_model("predator_prey");
  const std::vector<double> ladder{0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
  for (double a : {0.5, 0.6, 0.7, 0.8, 0.9}) {
    const auto t = rate_table(sys, FractionalOrder(a), Vector{{0.05, 0.05}}, 1.0, ladder, std::ldexp(1.0, -12));
    ASSERT_EQ(t.rho.size(), 4u);
    for (std::size_t i = 1; i < t.xi.size(); ++i) EXPECT_LT(t.xi[i], t.xi[i - 1]) << "alpha=" << a;
    EXPECT_GE(t.rho.back(), a - 0.1) << "alpha=" << a;
    EXPECT_LE(t.rho.back(), a + 0.3) << "alpha=" << a;
  }
}

TEST(RateTable, RejectsReferenceCoarserThanLadder) {
  EXPECT_THROW(rate_table(make_model("toy"), FractionalOrder(0.8), Vector{{1, 1}}, 1.0, {0.125, 0.0625}, 0.125),
               ParameterError);
}

// One-step defect at t = 1 with the exact history of D^a x = -x, x(t) = E_a(-t^a).
double local_defect(double a, int e) {
  const int n = 1 << e;
  const double h = 1.0 / n;
  const auto sys = testing::linear_decay(-1.0);
  StateMatrix hist(n, 1);
  for (int j = 0; j < n; ++j) hist(j, 0) = testing::mittag_leffler(a, -std::pow(j * h, a));
  const auto w = gl_weights(FractionalOrder(a), static_cast<std::size_t>(n));
  const double next = nsfd_step(sys, w, hist, h, static_cast<std::size_t>(n))[0];
  return std::abs(testing::mittag_leffler(a, -1.0) - next);
}

TEST(LocalTruncation, DefectScalesLikeOnePlusAlpha) {
  for (double a : {0.3, 0.5, 0.7, 0.9}) {
    double prev = local_defect(a, 6);
    for (int e = 7; e <= 10; ++e) {
      const double cur = local_defect(a, e);
      const double slope = std::log2(prev / cur);
      EXPECT_NEAR(slope, 1.0 + a, 0.2) << "alpha=" << a << " e=" << e;
      prev = cur;
    }
  }
}

}  // namespace
}  // namespace fracstep
