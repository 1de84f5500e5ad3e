#include "cascade/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cascade/builders.hpp"
#include "cascade/errors.hpp"
#include "cascade/invariants.hpp"

namespace cascade {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kBracketWidth = 1e-12;
}  // namespace

ShellState stationary_profile(double p, int r, double c) {
  if (c == 0.0) throw DomainError("stationary profile amplitude c must be nonzero");
  if (!(p > 1.0)) throw DomainError("stationary profile needs p > 1");
  std::vector<double> v(static_cast<std::size_t>(r) + 1);
  for (int i = 0; i <= r; ++i) v[i] = c * std::pow(p, -5.0 * i / 6.0);
  return ShellState(std::move(v));
}

ShellRange interior_shells(const CouplingTable& table) {
  const int s = table.empty() ? table.spec().range() : table.max_offset();
  ShellRange range{2 * s, table.r() - 2 * s};
  if (range.empty()) {
    throw RangeError("no interior shells: r = " + std::to_string(table.r()) +
                     " with interaction range " + std::to_string(s));
  }
  return range;
}

double BulkResidual::max_abs() const {
  if (degenerate) return kNaN;
  double m = 0.0;
  for (double x : values) m = std::max(m, std::abs(x));
  return m;
}

BulkResidual bulk_residual(const CouplingTable& table, const ShellState& profile) {
  if (profile.r() != table.r()) throw ConfigError("bulk_residual: dimension mismatch");
  BulkResidual out;
  out.shells = interior_shells(table);
  out.values.assign(static_cast<std::size_t>(out.shells.count()), kNaN);
  if (table.empty()) {
    out.degenerate = true;
    return out;
  }
  std::vector<double> sum(out.values.size(), 0.0);
  std::vector<double> magnitude(out.values.size(), 0.0);
  for (const auto& e : table.entries()) {
    if (e.shell < out.shells.lo || e.shell > out.shells.hi) continue;
    const double term = e.c * profile[e.shell + e.a] * profile[e.shell + e.b];
    sum[e.shell - out.shells.lo] += term;
    magnitude[e.shell - out.shells.lo] += std::abs(term);
  }
  for (std::size_t k = 0; k < sum.size(); ++k) {
    if (magnitude[k] > 0.0) {
      out.values[k] = sum[k] / magnitude[k];
    } else {
      out.degenerate = true;
    }
  }
  return out;
}

double fit_spectrum_slope(const std::vector<double>& shell_energy, double p, ShellRange shells) {
  if (shells.lo < 0 || shells.hi >= static_cast<int>(shell_energy.size())) {
    throw RangeError("spectrum fit range outside the shell range");
  }
  if (shells.count() < 2) throw RangeError("spectrum fit needs at least two shells");
  const double lnp = std::log(p);
  double mx = 0.0;
  double my = 0.0;
  for (int i = shells.lo; i <= shells.hi; ++i) {
    if (!(shell_energy[i] > 0.0)) {
      throw DomainError("shell energy E_" + std::to_string(i) + " is not positive");
    }
    mx += i * lnp;
    my += std::log(shell_energy[i]);
  }
  mx /= shells.count();
  my /= shells.count();
  double sxy = 0.0;
  double sxx = 0.0;
  for (int i = shells.lo; i <= shells.hi; ++i) {
    const double dx = i * lnp - mx;
    sxy += dx * (std::log(shell_energy[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

double spectrum_exponent(const ShellState& profile, double p, std::optional<ShellRange> shells) {
  const auto e = energy(profile, p);
  return fit_spectrum_slope(e.per_shell, p, shells.value_or(ShellRange{0, profile.r()}));
}

std::vector<double> claimed_stationary_gammas(Family family) {
  switch (family) {
    case Family::S2Diag: return {-0.5, -0.25};
    case Family::S3Diag: return {2.5, 1.25};
    case Family::S2OffDiag: return {-1.0, -1.5, -1.25};
    default: return {};
  }
}

namespace {

CouplingTable scan_table(Family family, int p, int r, double gamma) {
  switch (family) {
    case Family::S2Diag: return build_s2_diag(p, r, gamma, 1.0);
    case Family::S3Diag: return build_s3_diag(p, r, gamma, 1.0);
    case Family::S2OffDiag: return build_s2_offdiag(p, r, gamma, 1.0);
    default:
      throw ConfigError("gamma scan supports S2Diag, S3Diag and S2OffDiag, not " +
                        std::string(to_string(family)));
  }
}

double max_residual(Family family, int p, int r, double gamma) {
  const auto table = scan_table(family, p, r, gamma);
  if (table.empty()) return kNaN;
  return bulk_residual(table, stationary_profile(p, r, 1.0)).max_abs();
}

}  // namespace

double scan_residual(Family family, int p, int r, double gamma) {
  const auto table = scan_table(family, p, r, gamma);
  if (table.empty()) return kNaN;
  const auto res = bulk_residual(table, stationary_profile(p, r, 1.0));
  if (res.degenerate) return kNaN;
  return res.values[res.values.size() / 2];
}

ScanReport gamma_scan(Family family, int p, int r, double lo, double hi, double grid_step,
                      double tol) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ConfigError("gamma_scan: interval must be finite with lo < hi");
  }
  if (!(grid_step > 0.0)) throw ConfigError("gamma_scan: grid_step must be > 0");
  if (!(tol > 0.0)) throw ConfigError("gamma_scan: tol must be > 0");

  ScanReport report;
  report.family = family;
  report.p = p;
  report.r = r;
  report.lo = lo;
  report.hi = hi;
  report.grid_step = grid_step;
  report.tol = tol;
  report.claimed_roots = claimed_stationary_gammas(family);

  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / grid_step + 1e-9)) + 1;
  std::vector<double> gammas(n);
  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) {
    double g = lo + static_cast<double>(k) * grid_step;
    if (std::abs(g) < 1e-9 * grid_step) g = 0.0;
    gammas[k] = g;
    values[k] = scan_residual(family, p, r, g);
    if (std::isnan(values[k])) report.degenerate_points.push_back(g);
  }

  auto f = [&](double g) { return scan_residual(family, p, r, g); };
  std::vector<double> candidates;

  for (std::size_t k = 0; k + 1 < n; ++k) {
    double a = gammas[k];
    double b = gammas[k + 1];
    double fa = values[k];
    double fb = values[k + 1];
    if (std::isnan(fa) || std::isnan(fb)) continue;
    if (fa == 0.0) {
      candidates.push_back(a);
      continue;
    }
    if (fa * fb > 0.0 || fb == 0.0) continue;
    while (b - a > kBracketWidth) {
      const double m = 0.5 * (a + b);
      const double fm = f(m);
      if (std::isnan(fm)) break;
      if ((fm < 0.0) == (fa < 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    candidates.push_back(0.5 * (a + b));
  }
  if (!std::isnan(values.back()) && values.back() == 0.0) candidates.push_back(gammas.back());

  // Dips towards zero without a sign change (even-multiplicity roots).
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double v = values[k];
    if (std::isnan(v) || std::abs(v) >= 100.0 * tol) continue;
    if (std::isnan(values[k - 1]) || std::isnan(values[k + 1])) continue;
    if (values[k - 1] * v <= 0.0 || v * values[k + 1] <= 0.0) continue;
    double a = gammas[k - 1];
    double b = gammas[k + 1];
    constexpr double kGolden = 0.6180339887498949;
    while (b - a > kBracketWidth) {
      const double x1 = b - kGolden * (b - a);
      const double x2 = a + kGolden * (b - a);
      if (std::abs(f(x1)) < std::abs(f(x2))) {
        b = x2;
      } else {
        a = x1;
      }
    }
    candidates.push_back(0.5 * (a + b));
  }

  std::sort(candidates.begin(), candidates.end());
  for (double g : candidates) {
    const double res = max_residual(family, p, r, g);
    if (std::isnan(res) || res > tol) continue;
    if (!report.roots.empty() && g - report.roots.back().gamma < grid_step) {
      if (res < report.roots.back().residual) report.roots.back() = {g, res, false};
      continue;
    }
    report.roots.push_back({g, res, false});
  }

  for (auto& root : report.roots) {
    for (double claim : report.claimed_roots) {
      if (std::abs(root.gamma - claim) <= kClaimMatchTol) root.matches_claim = true;
    }
  }
  for (double claim : report.claimed_roots) {
    const bool found = std::any_of(report.roots.begin(), report.roots.end(), [&](const auto& x) {
      return std::abs(x.gamma - claim) <= kClaimMatchTol;
    });
    report.matches.push_back(found);
  }
  return report;
}

nlohmann::json to_json(const ScanReport& report) {
  nlohmann::json roots = nlohmann::json::array();
  for (const auto& root : report.roots) {
    roots.push_back({{"gamma", root.gamma},
                     {"residual", root.residual},
                     {"matches_claim", root.matches_claim}});
  }
  return {{"family", std::string(to_string(report.family))},
          {"p", report.p},
          {"r", report.r},
          {"interval", {report.lo, report.hi}},
          {"grid_step", report.grid_step},
          {"tol", report.tol},
          {"roots", roots},
          {"claimed_roots", report.claimed_roots},
          {"matches", report.matches},
          {"degenerate_points", report.degenerate_points}};
}

}  // namespace cascade
