#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "cascade/builders.hpp"
#include "cascade/errors.hpp"
#include "cascade/invariants.hpp"
#include "cascade/random.hpp"
#include "cascade/rhs.hpp"
#include "oracles/direct_models.hpp"
#include "oracles/span_fit.hpp"

namespace cascade {
namespace {

ShellState unit_state(int r, int shell) {
  auto s = std::vector<double>(r + 1, 0.0);
  s[shell] = 1.0;
  return ShellState(s);
}

TEST(Energy, SingleShellValues) {
  EXPECT_DOUBLE_EQ(energy(unit_state(6, 0), 2).total, 0.5);
  EXPECT_DOUBLE_EQ(energy(unit_state(6, 1), 2).total, 1.0);
  EXPECT_EQ(energy(ShellState::zeros(6), 2).total, 0.0);
  const auto e = energy(ShellState({1, 2, 3}), 3);
  EXPECT_DOUBLE_EQ(e.per_shell[2], (2.0 / 3.0) * 9.0 * 9.0);
}

TEST(Helicity, Values) {
  HMatrix zero{SymmetricBandedMatrix(6, 1)};
  EXPECT_EQ(helicity(ShellState({1, 2, 3, 4, 5, 6, 7}), zero, 2), 0.0);
  EXPECT_DOUBLE_EQ(helicity(unit_state(6, 0), h_diag(2, 6, 0.0, 1.0), 2), 0.25);
}

TEST(Helicity, OffDiagonalClosedForm) {
  for (int p : {2, 3}) {
    const double g = -1.25;
    const double h0 = 0.7;
    const int r = 8;
    UniformSampler s(3, p);
    const ShellState v(s.uniform_vector(r + 1, -1, 1));
    double expected = 0.0;
    for (int i = 1; i <= r; ++i) expected += std::pow(p, (g + 2) * i) * v[i] * v[i - 1];
    expected *= h0 / p;
    EXPECT_NEAR(helicity(v, h_offdiag(p, r, g, h0), p), expected, 1e-12 * std::abs(expected));
  }
}

// Energy balance of the nearest-neighbour model on the monomial
// V_n V_{n+1} V_{n+2}: the three contributions, divided by p^((gamma+3) n),
// are A, p^(gamma+3) B and p^(2 gamma + 6) C.
double telescoping_sum(double p, double g) {
  const double A = std::pow(p, 3) * (std::pow(p, g) - std::pow(p, 2 * g));
  const double B = std::pow(p, g) - std::pow(p, -g);
  const double C = std::pow(p, -3) * (std::pow(p, -2 * g) - std::pow(p, -g));
  return A + std::pow(p, g + 3) * B + std::pow(p, 2 * g + 6) * C;
}

TEST(QuadraticDerivative, TelescopingOracle) {
  for (double p : {2.0, 3.0, 5.0}) {
    for (double g : {-1.0, -0.5, -0.25, 0.5}) {
      const double scale = std::pow(p, 2 * g + 6);
      EXPECT_NEAR(telescoping_sum(p, g), 0.0, 1e-13 * scale);
    }
  }
}

TEST(QuadraticDerivative, S2DiagConservesEnergy) {
  for (int p : {2, 3, 5}) {
    for (double g : {-1.0, -0.5, -0.25, 0.5}) {
      const int r = 12;
      const auto t = build_s2_diag(p, r, g, 1.0);
      const auto all = expand_quadratic_derivative(t, energy_weights(p, r));
      ASSERT_FALSE(all.empty());
      for (const auto& m : all) {
        EXPECT_EQ(m.n2, m.n1 + 1);
        EXPECT_EQ(m.n3, m.n1 + 2);
        EXPECT_LE(m.relative(), 1e-12);
      }
      EXPECT_TRUE(quadratic_derivative(t, energy_weights(p, r)).empty());
    }
  }
}

TEST(QuadraticDerivative, GoyConservesUnitWeights) {
  const auto t = build_goy(2.0, 0.5, 1.0, 12);
  EXPECT_TRUE(quadratic_derivative(t, diagonal_weights(std::vector<double>(13, 1.0))).empty());
}

TEST(QuadraticDerivative, EmptyTableHasNoMonomials) {
  EXPECT_TRUE(expand_quadratic_derivative(build_s2_diag(2, 8, 0.0, 1.0), energy_weights(2, 8))
                  .empty());
}

TEST(QuadraticDerivative, RejectsWideWeights) {
  WeightMatrix w{SymmetricBandedMatrix(8, 2)};
  w.w.set(0, 2, 1.0);
  EXPECT_THROW(expand_quadratic_derivative(build_goy(2, 0.5, 1, 8), w), UnsupportedError);
}

// Re-evaluating the expanded cubic polynomial must reproduce
// 2 sum_ij W_ij V_j RHS_i(V), computed with the direct model evaluator.
TEST(QuadraticDerivative, ExpansionReproducesPointwiseDerivative) {
  const int p = 3;
  const int r = 10;
  const double g = -0.8;
  const auto t = build_s2_offdiag(p, r, g, 1.0);
  const auto w = helicity_weights(h_offdiag(p, r, g, 1.0), p);
  const auto expansion = expand_quadratic_derivative(t, w);
  for (std::uint64_t k = 0; k < 5; ++k) {
    UniformSampler s(99, k);
    const auto v = s.uniform_vector(r + 1, -1, 1);
    const auto rhs = oracle::s2_offdiag_rhs(p, g, 1.0, v);
    double direct = 0.0;
    double scale = 0.0;
    for (int i = 0; i <= r; ++i)
      for (int j = std::max(0, i - 1); j <= std::min(r, i + 1); ++j) {
        direct += 2 * w(i, j) * v[j] * rhs[i];
        scale += std::abs(2 * w(i, j) * v[j] * rhs[i]);
      }
    double poly = 0.0;
    for (const auto& m : expansion) poly += m.coefficient * v[m.n1] * v[m.n2] * v[m.n3];
    EXPECT_NEAR(poly, direct, 1e-12 * scale);
  }
}

TEST(AuditConservation, S2DiagEnergyConserved) {
  const auto t = build_s2_diag(3, 14, -0.25, 1.0);
  const auto report = audit_conservation(t, energy_weights(3, 14), 50, 17, 1e-12, "E");
  EXPECT_EQ(report.verdict, Verdict::Conserved);
  EXPECT_EQ(report.seed, 17u);
  EXPECT_LE(report.max_sampled_relative, 1e-12);
  const auto j = to_json(report);
  for (const char* key : {"quantity", "seed", "n_samples", "tol", "max_sampled_derivative",
                          "symbolic_residuals", "verdict"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["verdict"], "conserved");
}

TEST(AuditConservation, ModelDiagonalHelicityWeightIsViolated) {
  const int p = 2;
  const int r = 12;
  const auto t = build_s2_diag(p, r, -0.5, 1.0);
  const auto model_h = helicity_weights(h_diag(p, r, -0.5, 1.0), p);
  const auto report = audit_conservation(t, model_h, 20, 1, 1e-12, "H_model");
  EXPECT_EQ(report.verdict, Verdict::Violated);
  EXPECT_FALSE(report.symbolic_residuals.empty());
  EXPECT_GT(report.max_sampled_relative, 1e-6);
  const auto solved = audit_conservation(t, power_weights(p, 0.5, r), 20, 1, 1e-12);
  EXPECT_EQ(solved.verdict, Verdict::Conserved);
}

TEST(AuditConservation, S3DiagAgreesWithSymbolicExpansion) {
  const int p = 2;
  const int r = 14;
  for (double g : {-0.5, 1.25, 2.5}) {
    const auto t = build_s3_diag(p, r, g, 1.0);
    const auto w = energy_weights(p, r);
    const auto report = audit_conservation(t, w, 50, 5, 1e-12);
    const bool symbolic_clean = quadratic_derivative(t, w, 1e-12).empty();
    EXPECT_EQ(report.verdict == Verdict::Conserved, symbolic_clean);
    EXPECT_EQ(report.max_sampled_relative <= 1e-12, symbolic_clean);
  }
}

TEST(AuditConservation, ZeroTableAlwaysConserved) {
  const auto t = build_s3_diag(2, 8, 0.0, 1.0);
  WeightMatrix w{SymmetricBandedMatrix(8, 1)};
  w.w.set(3, 4, 2.0);
  EXPECT_EQ(audit_conservation(t, w, 5, 0, 1e-12).verdict, Verdict::Conserved);
}

TEST(AuditConservation, RequiresSamples) {
  EXPECT_THROW(audit_conservation(build_goy(2, .5, 1, 6), energy_weights(2, 6), 0, 0, 1e-12),
               ConfigError);
}

TEST(SolveInvariantWeights, S2DiagHasTwoPowerLawInvariants) {
  for (int p : {2, 3}) {
    for (double g : {-0.5, -0.25, 0.5}) {
      const int r = 12;
      const auto basis = solve_invariant_weights(build_s2_diag(p, r, g, 1.0), 0);
      ASSERT_EQ(basis.dimension(), 2u) << p << " " << g;
      EXPECT_FALSE(basis.degenerate);
      EXPECT_LE(oracle::span_fit_error(basis.basis, oracle::power_diagonal(p, 1.0, r), 4, r - 4),
                1e-9);
      EXPECT_LE(oracle::span_fit_error(basis.basis, oracle::power_diagonal(p, g + 1, r), 4, r - 4),
                1e-9);
      EXPECT_LE(basis.max_basis_residual, 1e-10);
    }
  }
}

TEST(SolveInvariantWeights, GoyRecoversBothInvariants) {
  const int r = 12;
  const double eps = 0.5;
  const auto basis = solve_invariant_weights(build_goy(2.0, eps, 1.0, r), 0);
  ASSERT_EQ(basis.dimension(), 2u);
  EXPECT_LE(oracle::span_fit_error(basis.basis, std::vector<double>(r + 1, 1.0), 0, r), 1e-9);
  EXPECT_LE(oracle::span_fit_error(basis.basis, oracle::power_diagonal(eps - 1, -1, r), 0, r),
            1e-9);
}

TEST(SolveInvariantWeights, EmptyTableIsDegenerate) {
  const auto basis = solve_invariant_weights(build_s2_diag(2, 8, 0.0, 1.0), 1);
  EXPECT_TRUE(basis.degenerate);
  EXPECT_EQ(basis.dimension(), 9u + 8u);
}

TEST(SolveInvariantWeights, BasisIsClosedUnderAudit) {
  const auto t = build_s2_offdiag(2, 10, -1.0, 1.0);
  for (int band : {0, 1}) {
    const auto basis = solve_invariant_weights(t, band);
    ASSERT_GE(basis.dimension(), 1u);
    for (const auto& w : basis.basis) {
      EXPECT_EQ(audit_conservation(t, w, 20, 3, 1e-9).verdict, Verdict::Conserved);
    }
  }
}

TEST(SolveInvariantWeights, RejectsBandwidth) {
  EXPECT_THROW(solve_invariant_weights(build_goy(2, .5, 1, 6), 2), UnsupportedError);
}

}  // namespace
}  // namespace cascade
