#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "cascade/coupling_table.hpp"
#include "cascade/model_spec.hpp"
#include "cascade/shell_state.hpp"

namespace cascade {

/// V_i = c p^(-5i/6). Throws DomainError for c == 0.
ShellState stationary_profile(double p, int r, double c);

/// Shells [lo, hi], inclusive.
struct ShellRange {
  int lo = 0;
  int hi = 0;

  bool empty() const noexcept { return hi < lo; }
  int count() const noexcept { return empty() ? 0 : hi - lo + 1; }
};

/// Interior shells [2s, r - 2s] with s the table's largest offset.
/// Throws RangeError when that range is empty.
ShellRange interior_shells(const CouplingTable& table);

struct BulkResidual {
  ShellRange shells;
  /// Quadratic RHS divided by the sum of magnitudes of its terms, per
  /// interior shell. NaN where a shell has no contributing terms.
  std::vector<double> values;
  /// True when the table is empty or some shell had no terms; the
  /// residual is then undefined.
  bool degenerate = false;

  /// max |value|; NaN when degenerate.
  double max_abs() const;
};

/// Normalized residual of a profile on the interior shells. The
/// normalization makes the value scale-free (independent of c, p^i
/// prefactors and h0).
BulkResidual bulk_residual(const CouplingTable& table, const ShellState& profile);

/// Least-squares slope of ln E_i against i ln p, E_i = (1 - 1/p) p^i V_i^2,
/// over `shells` (all shells by default). Throws DomainError if any E_i in
/// range is not positive and RangeError if the range has fewer than two
/// shells.
double spectrum_exponent(const ShellState& profile, double p,
                         std::optional<ShellRange> shells = std::nullopt);

/// Same fit applied to precomputed shell energies.
double fit_spectrum_slope(const std::vector<double>& shell_energy, double p, ShellRange shells);

struct ScanRoot {
  double gamma = 0.0;
  /// max |bulk residual| over interior shells at gamma.
  double residual = 0.0;
  bool matches_claim = false;
};

struct ScanReport {
  Family family = Family::S2Diag;
  int p = 2;
  int r = 20;
  double lo = 0.0;
  double hi = 0.0;
  double grid_step = 0.0;
  double tol = 0.0;
  std::vector<ScanRoot> roots;
  /// Claimed stationary gamma values for this family.
  std::vector<double> claimed_roots;
  /// One flag per claimed root: found within kClaimMatchTol.
  std::vector<bool> matches;
  /// Grid points where the residual was undefined (empty table).
  std::vector<double> degenerate_points;
};

/// Distance below which a refined root is identified with a claimed value.
inline constexpr double kClaimMatchTol = 1e-9;

/// Claimed stationary gamma values: S2Diag {-1/2, -1/4}, S3Diag {5/2, 5/4},
/// S2OffDiag {-1, -3/2, -5/4}. Empty for other families.
std::vector<double> claimed_stationary_gammas(Family family);

/// Builds the family with h0 = 1 at each grid gamma, evaluates the bulk
/// residual of the p^(-5i/6) profile, and refines sign changes and near-zero
/// dips (|res| < 100 tol) by bisection to an interval of 1e-12. Candidates
/// whose refined residual exceeds `tol` are discarded. Supported families:
/// S2Diag, S3Diag, S2OffDiag.
ScanReport gamma_scan(Family family, int p, int r, double lo, double hi, double grid_step,
                      double tol);

/// Signed scan function: the residual at the central interior shell, or NaN
/// when degenerate. Exposed for independent re-evaluation.
double scan_residual(Family family, int p, int r, double gamma);

nlohmann::json to_json(const ScanReport& report);

}  // namespace cascade
