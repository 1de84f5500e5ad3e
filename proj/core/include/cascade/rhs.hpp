#pragma once

#include <optional>
#include <vector>

#include "cascade/coupling_table.hpp"
#include "cascade/shell_state.hpp"

namespace cascade {

/// Linear damping nu_ij. Either a diagonal law nu_i = nu0 p^(2i) or a full
/// (r+1) x (r+1) row-major matrix.
class Dissipation {
 public:
  Dissipation() = default;

  static Dissipation none(int r);
  static Dissipation diagonal_law(double nu0, double p, int r);
  /// Throws ConfigError on a size mismatch or non-finite entry.
  static Dissipation matrix(int r, std::vector<double> row_major);

  int r() const noexcept { return r_; }
  bool is_zero() const noexcept;
  /// Law coefficient when constructed from diagonal_law.
  std::optional<double> nu0() const noexcept { return nu0_; }

  double operator()(int i, int j) const noexcept;
  /// Dense row-major expansion.
  std::vector<double> full_matrix() const;
  /// Largest diagonal entry, used for explicit-step stability warnings.
  double max_diagonal() const noexcept;

  /// out_i -= sum_j nu_ij v_j
  void subtract_from(const std::vector<double>& v, std::vector<double>& out) const;

 private:
  int r_ = -1;
  std::optional<double> nu0_;
  std::vector<double> diag_;   // set for the diagonal law
  std::vector<double> dense_;  // set for a full matrix
};

struct Forcing {
  std::vector<double> f;

  static Forcing none(int r) { return Forcing{std::vector<double>(r + 1, 0.0)}; }
};

/// A complete ODE system: quadratic couplings, damping, forcing.
struct CascadeSystem {
  CouplingTable table;
  Dissipation nu;
  Forcing forcing;

  /// Unforced, undamped system for `table`.
  static CascadeSystem inviscid(CouplingTable table);
  int r() const noexcept { return table.r(); }
};

/// Quadratic part only: out_i = sum_{entries at i} c V_{i+a} V_{i+b}.
std::vector<double> quadratic_rhs(const CouplingTable& table, const std::vector<double>& v);

/// Full right-hand side
///   out_i = sum c V_{i+a} V_{i+b} - sum_j nu_ij V_j + f_i.
/// Throws ConfigError on a dimension mismatch and NumericError (with the
/// shell index) when a component is not finite.
std::vector<double> eval_rhs(const CouplingTable& table, const Dissipation& nu,
                             const Forcing& f, const ShellState& state);

std::vector<double> eval_rhs(const CascadeSystem& system, const ShellState& state);

/// Same as above on a raw vector (no finiteness check on input); used by the
/// integrators for stage states.
void eval_rhs_into(const CascadeSystem& system, const std::vector<double>& v,
                   std::vector<double>& out);

}  // namespace cascade
