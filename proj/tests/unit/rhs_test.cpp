#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "cascade/builders.hpp"
#include "cascade/errors.hpp"
#include "cascade/rhs.hpp"
#include "cascade/stationary.hpp"

namespace cascade {
namespace {

TEST(EvalRhs, ZeroStateZeroForcing) {
  const auto t = build_s2_diag(2, 8, -0.5, 1.0);
  const auto out = eval_rhs(t, Dissipation::diagonal_law(0.3, 2, 8), Forcing::none(8),
                            ShellState::zeros(8));
  for (double x : out) EXPECT_EQ(x, 0.0);
}

TEST(EvalRhs, PureLinearDecay) {
  const int r = 6;
  const auto t = build_s2_diag(2, r, 0.0, 1.0);  // empty
  ASSERT_TRUE(t.empty());
  const auto nu = Dissipation::diagonal_law(0.01, 2, r);
  std::vector<double> v{1, -2, 3, 0.5, 0.25, -1, 2};
  const auto out = eval_rhs(t, nu, Forcing::none(r), ShellState(v));
  for (int i = 0; i <= r; ++i) EXPECT_DOUBLE_EQ(out[i], -0.01 * std::pow(4.0, i) * v[i]);
}

TEST(EvalRhs, FullDissipationMatrixAndForcing) {
  const int r = 4;
  std::vector<double> m(25, 0.0);
  m[0 * 5 + 1] = 2.0;
  m[3 * 5 + 3] = 1.0;
  const auto nu = Dissipation::matrix(r, m);
  EXPECT_EQ(nu.full_matrix(), m);
  Forcing f{{0.5, 0, 0, 0, 1}};
  const auto out =
      eval_rhs(build_goy(2, 1, 1, r).scaled(0.0), nu, f, ShellState({1, 3, 0, 2, 0}));
  EXPECT_DOUBLE_EQ(out[0], 0.5 - 6.0);
  EXPECT_DOUBLE_EQ(out[3], -2.0);
  EXPECT_DOUBLE_EQ(out[4], 1.0);
}

TEST(EvalRhs, DiagonalLawExpands) {
  const auto nu = Dissipation::diagonal_law(0.5, 3, 3);
  const auto full = nu.full_matrix();
  EXPECT_DOUBLE_EQ(full[2 * 4 + 2], 0.5 * 81.0);
  EXPECT_EQ(full[2 * 4 + 1], 0.0);
  EXPECT_DOUBLE_EQ(nu.max_diagonal(), 0.5 * 729.0);
}

TEST(EvalRhs, StationaryProfileInBulk) {
  const auto t = build_s2_diag(2, 6, -0.5, 1.0);
  const auto v = stationary_profile(2, 6, 1.0);
  const auto out = eval_rhs(t, Dissipation::none(6), Forcing::none(6), v);
  for (int i = 2; i <= 4; ++i) {
    double scale = 0.0;
    for (const auto& e : t.at_shell(i)) scale += std::abs(e.c * v[i + e.a] * v[i + e.b]);
    EXPECT_LE(std::abs(out[i]), 1e-12 * scale) << i;
  }
}

TEST(EvalRhs, OverflowNamesShell) {
  const auto t = build_goy(2.0, 0.5, 1.0, 6);
  std::vector<double> v(7, 0.0);
  v[4] = 1e200;
  v[5] = 1e200;
  try {
    eval_rhs(t, Dissipation::none(6), Forcing::none(6), ShellState(v));
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    EXPECT_EQ(e.shell(), 3);
  }
}

TEST(EvalRhs, DimensionMismatch) {
  const auto t = build_goy(2.0, 0.5, 1.0, 6);
  EXPECT_THROW(eval_rhs(t, Dissipation::none(6), Forcing::none(6), ShellState::zeros(7)),
               ConfigError);
}

TEST(ShellState, RejectsNonFiniteAndPadsWithZeros) {
  EXPECT_THROW(ShellState({1.0, std::numeric_limits<double>::infinity()}), DomainError);
  const ShellState s({1.0, 2.0});
  EXPECT_EQ(s[-1], 0.0);
  EXPECT_EQ(s[2], 0.0);
  EXPECT_EQ(s.padded(3), ShellState({1.0, 2.0, 0.0, 0.0}));
}

}  // namespace
}  // namespace cascade
