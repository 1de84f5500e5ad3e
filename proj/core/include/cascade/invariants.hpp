#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cascade/banded_matrix.hpp"
#include "cascade/coupling_table.hpp"
#include "cascade/shell_state.hpp"

namespace cascade {

struct EnergyResult {
  double total = 0.0;
  std::vector<double> per_shell;
};

/// E_i = (1 - 1/p) p^i V_i^2 and their sum.
EnergyResult energy(const ShellState& state, double p);

/// (1 - 1/p)^2 sum_{i,j} p^i p^j h_ij V_i V_j.
double helicity(const ShellState& state, const HMatrix& h, double p);

/// Q(V) = sum W_ij V_i V_j.
double quadratic_form(const WeightMatrix& w, const ShellState& state);

/// Net coefficient of one cubic monomial V_n1 V_n2 V_n3 (n1 <= n2 <= n3)
/// in dQ/dt.
struct MonomialResidual {
  int n1 = 0;
  int n2 = 0;
  int n3 = 0;
  double coefficient = 0.0;
  /// Sum of |contributions|; the scale for the relative residual.
  double magnitude = 0.0;

  double relative() const noexcept {
    return magnitude > 0.0 ? std::abs(coefficient) / magnitude : 0.0;
  }
};

/// Expands dQ/dt = 2 sum_ij W_ij V_j RHS_i(V) (quadratic part) into cubic
/// monomials and returns every net coefficient, sorted by monomial.
/// Throws UnsupportedError when W has bandwidth above one.
std::vector<MonomialResidual> expand_quadratic_derivative(const CouplingTable& table,
                                                          const WeightMatrix& w);

/// Monomials whose relative residual exceeds `tol`. Empty when the quadratic
/// form is an exact invariant of the table.
std::vector<MonomialResidual> quadratic_derivative(const CouplingTable& table,
                                                   const WeightMatrix& w, double tol = 1e-12);

enum class Verdict { Conserved, Violated };
std::string to_string(Verdict v);

struct AuditReport {
  std::string quantity;
  std::uint64_t seed = 0;
  int n_samples = 0;
  double tol = 0.0;
  double max_sampled_derivative = 0.0;
  /// max over samples of |dQ/dt| / sum |terms of dQ/dt|
  double max_sampled_relative = 0.0;
  std::vector<MonomialResidual> symbolic_residuals;
  Verdict verdict = Verdict::Conserved;
};

/// Samples `n_samples` states uniform in [-1, 1] (substream k for sample k),
/// evaluates dQ/dt with zero damping and forcing, and combines it with the
/// symbolic expansion. Conserved iff the sampled relative maximum and every
/// symbolic residual are within `tol`.
AuditReport audit_conservation(const CouplingTable& table, const WeightMatrix& w, int n_samples,
                               std::uint64_t seed, double tol, std::string quantity = "Q");

nlohmann::json to_json(const AuditReport& report);

/// Basis of all banded quadratic invariants of a table.
struct InvariantBasis {
  int bandwidth = 0;
  std::vector<WeightMatrix> basis;
  std::vector<double> singular_values;
  /// Singular values at or below this are treated as zero.
  double rank_cutoff = 0.0;
  /// No constraints at all (empty table): every W is conserved.
  bool degenerate = false;
  /// Largest relative symbolic residual over the returned basis.
  double max_basis_residual = 0.0;

  std::size_t dimension() const noexcept { return basis.size(); }
};

/// Relative singular-value cutoff used by solve_invariant_weights.
inline constexpr double kRankTolerance = 1e-9;

/// Solves the homogeneous system over the free entries of W (diagonal, plus
/// the first off-diagonal for bandwidth 1) that cancels every cubic monomial
/// of dQ/dt. Rows are normalized and columns equilibrated before the SVD;
/// singular values below kRankTolerance times the largest are zero.
/// Throws UnsupportedError for bandwidth outside {0, 1}.
InvariantBasis solve_invariant_weights(const CouplingTable& table, int bandwidth);

nlohmann::json to_json(const InvariantBasis& basis);

}  // namespace cascade
