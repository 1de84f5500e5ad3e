#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cascade/banded_matrix.hpp"
#include "cascade/rhs.hpp"
#include "cascade/shell_state.hpp"
#include "cascade/stationary.hpp"

namespace cascade {

enum class Method { RK4, RK45 };
std::string to_string(Method m);
Method method_from_string(const std::string& name);

struct IntegratorSpec {
  Method method = Method::RK4;
  /// Fixed step (RK4) or initial step (RK45).
  double dt = 1e-3;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double dt_min = 1e-12;
  double dt_max = 1e-1;
  double duration = 10.0;
  int sample_stride = 10;

  /// Throws ConfigError. duration == 0 is accepted and yields one sample.
  void validate() const;
};

struct StepStatistics {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double smallest_step = 0.0;
  double largest_step = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<ShellState> states;
  std::vector<double> energy;
  /// Second invariant per sample, when a weight was supplied.
  std::optional<std::vector<double>> second;
  IntegratorSpec spec;
  StepStatistics stats;

  std::size_t size() const noexcept { return times.size(); }
};

/// Classical four-stage Runge-Kutta step. Throws NumericError carrying the
/// shell and stage of the first non-finite value.
ShellState step_rk4(const CascadeSystem& system, const ShellState& state, double dt);

/// Advances to spec.duration, recording t = 0, every sample_stride-th step
/// and the final state. Energy uses `energy_weight`; `second_weight`, when
/// given, is recorded as well. RK45 is Dormand-Prince 5(4) with the error
/// norm max_i |e_i| / (abs_tol + rel_tol max(|y_i|, |y'_i|)); it throws
/// IntegrationFailure when the step would drop below dt_min.
Trajectory integrate(const CascadeSystem& system, const ShellState& state0,
                     const IntegratorSpec& spec, const WeightMatrix& energy_weight,
                     const std::optional<WeightMatrix>& second_weight = std::nullopt);

/// For each weight: max over samples of |Q(t) - Q(0)| / max(|Q(0)|, 1e-300).
std::vector<double> drift_report(const Trajectory& traj, const std::vector<WeightMatrix>& weights);

struct SpectrumReport {
  double t0 = 0.0;
  double t1 = 0.0;
  std::size_t samples = 0;
  std::vector<double> mean_energy;
  double slope = 0.0;
};

/// Averages E_i over samples with t0 <= t <= t1 and fits the slope as
/// spectrum_exponent does (over `shells`, all by default).
/// Throws RangeError for a window outside the trajectory or with no samples
/// and DomainError when some averaged E_i is not positive.
SpectrumReport time_avg_spectrum(const Trajectory& traj, double p, double t0, double t1,
                                 std::optional<ShellRange> shells = std::nullopt);

/// GOY parameters equivalent to the S2Diag model at gamma = -1/2 under
/// v_i = p^(i/2) V_i.
struct GoyCorrespondence {
  double lambda = 0.0;
  double eps = 0.0;
  double a = 0.0;
  double p = 0.0;

  /// v_i = p^(i/2) V_i
  ShellState to_goy(const ShellState& v) const;
  /// V_i = p^(-i/2) v_i
  ShellState from_goy(const ShellState& v) const;
};

GoyCorrespondence goy_map(int p, double h0);

nlohmann::json to_json(const StepStatistics& stats);

}  // namespace cascade
