#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "cascade/model_spec.hpp"

namespace cascade {

/// One quadratic term: c * V_{shell+a} * V_{shell+b} feeding dV_shell/dt.
/// Canonical form has a <= b.
struct CouplingEntry {
  int shell = 0;
  int a = 0;
  int b = 0;
  double c = 0.0;

  auto key() const { return std::tie(shell, a, b); }
  friend bool operator==(const CouplingEntry&, const CouplingEntry&) = default;
};

/// The quadratic right-hand side of a model as explicit entries, sorted by
/// (shell, a, b), unique, with no zero coefficients and no references to
/// shells outside [0, r].
class CouplingTable {
 public:
  CouplingTable() = default;

  const ModelSpec& spec() const noexcept { return spec_; }
  int r() const noexcept { return spec_.r; }
  const std::vector<CouplingEntry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Entries belonging to one shell.
  std::vector<CouplingEntry> at_shell(int shell) const;
  /// Coefficient of (shell, a, b) in canonical order; 0 if absent.
  double coefficient(int shell, int a, int b) const;
  /// Largest |a| or |b| over all entries; 0 for an empty table.
  int max_offset() const noexcept;

  /// Every coefficient multiplied by `factor`.
  CouplingTable scaled(double factor) const;

  /// One line per entry: "i\ta\tb\tc" with c at 17 significant digits.
  std::string to_text() const;

  friend class CouplingTableBuilder;

 private:
  ModelSpec spec_;
  std::vector<CouplingEntry> entries_;
};

/// Accumulates terms into canonical form. Terms touching shells outside
/// [0, r] are dropped, which is exactly the zero-padding convention.
class CouplingTableBuilder {
 public:
  explicit CouplingTableBuilder(ModelSpec spec);

  /// Adds c * V_{shell+a} V_{shell+b}; (a, b) may be given in either order.
  void add(int shell, int a, int b, double c);

  /// Finalizes. Coefficients whose magnitude is at most `cancel_tol` times
  /// the summed magnitude of their contributions are treated as cancelled.
  CouplingTable build(double cancel_tol = 0.0) &&;

 private:
  struct Accumulator {
    double sum = 0.0;
    double magnitude = 0.0;
  };

  ModelSpec spec_;
  std::map<std::tuple<int, int, int>, Accumulator> terms_;
};

/// One difference between two tables.
struct CouplingMismatch {
  int shell = 0;
  int a = 0;
  int b = 0;
  double lhs = 0.0;  ///< 0 when absent from the first table
  double rhs = 0.0;  ///< 0 when absent from the second table
  bool only_in_lhs = false;
  bool only_in_rhs = false;

  /// lhs / rhs, NaN when either side is absent.
  double ratio() const;
};

struct CouplingComparison {
  double tol = 0.0;
  std::size_t lhs_entries = 0;
  std::size_t rhs_entries = 0;
  std::vector<CouplingMismatch> mismatches;

  bool identical() const noexcept { return mismatches.empty(); }
  std::string to_text() const;
};

/// Lists every (i, a, b) whose coefficients differ by more than `tol`
/// relative to the larger magnitude, plus entries present in one table
/// only. Throws ConfigError when the tables have different r.
CouplingComparison compare_couplings(const CouplingTable& lhs, const CouplingTable& rhs,
                                     double tol);

}  // namespace cascade
