#include "cascade/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "cascade/errors.hpp"
#include "cascade/invariants.hpp"

namespace cascade {

std::string to_string(Method m) { return m == Method::RK4 ? "RK4" : "RK45"; }

Method method_from_string(const std::string& name) {
  if (name == "RK4" || name == "rk4") return Method::RK4;
  if (name == "RK45" || name == "rk45") return Method::RK45;
  throw ConfigError("unknown integrator method '" + name + "' (expected RK4 or RK45)");
}

void IntegratorSpec::validate() const {
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw ConfigError("T must be finite and >= 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be > 0");
  if (duration > 0.0 && dt > duration) throw ConfigError("dt must not exceed T");
  if (sample_stride < 1) throw ConfigError("sample_stride must be >= 1");
  if (method == Method::RK45) {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ConfigError("rel_tol and abs_tol must be > 0");
    if (!(dt_min > 0.0) || !(dt_max > 0.0)) throw ConfigError("dt_min and dt_max must be > 0");
    if (dt_min > dt_max) throw ConfigError("dt_min must not exceed dt_max");
  }
}

namespace {

using Vec = std::vector<double>;

void check_stage(const Vec& k, int stage) {
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (!std::isfinite(k[i])) {
      throw NumericError("non-finite derivative at shell " + std::to_string(i) + ", stage " +
                             std::to_string(stage),
                         static_cast<int>(i), stage);
    }
  }
}

// y + h * sum_j coeff_j k_j
Vec combine(const Vec& y, double h, std::initializer_list<std::pair<double, const Vec*>> terms) {
  Vec out(y);
  for (const auto& [coeff, k] : terms) {
    if (coeff == 0.0) continue;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * coeff * (*k)[i];
  }
  return out;
}

Vec rk4_step(const CascadeSystem& system, const Vec& y, double dt) {
  Vec k1, k2, k3, k4;
  eval_rhs_into(system, y, k1);
  check_stage(k1, 1);
  eval_rhs_into(system, combine(y, 0.5 * dt, {{1.0, &k1}}), k2);
  check_stage(k2, 2);
  eval_rhs_into(system, combine(y, 0.5 * dt, {{1.0, &k2}}), k3);
  check_stage(k3, 3);
  eval_rhs_into(system, combine(y, dt, {{1.0, &k3}}), k4);
  check_stage(k4, 4);
  Vec out(y);
  for (std::size_t i = 0; i < y.size(); ++i) {
    out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!std::isfinite(out[i])) {
      throw NumericError("non-finite state at shell " + std::to_string(i), int(i), 4);
    }
  }
  return out;
}

struct Recorder {
  Trajectory& traj;
  const WeightMatrix& energy_weight;
  const std::optional<WeightMatrix>& second_weight;

  void record(double t, const Vec& y) {
    ShellState s(y);
    traj.times.push_back(t);
    traj.energy.push_back(quadratic_form(energy_weight, s));
    if (second_weight) traj.second->push_back(quadratic_form(*second_weight, s));
    traj.states.push_back(std::move(s));
  }
};

void integrate_rk4(const CascadeSystem& system, Vec y, const IntegratorSpec& spec,
                   Recorder& rec) {
  auto& stats = rec.traj.stats;
  if (spec.duration == 0.0) return;
  const auto n = static_cast<std::size_t>(std::ceil(spec.duration / spec.dt - 1e-9));
  for (std::size_t k = 1; k <= n; ++k) {
    const double h = k < n ? spec.dt : spec.duration - static_cast<double>(n - 1) * spec.dt;
    y = rk4_step(system, y, h);
    ++stats.accepted;
    stats.smallest_step = stats.accepted == 1 ? h : std::min(stats.smallest_step, h);
    stats.largest_step = std::max(stats.largest_step, h);
    if (k % static_cast<std::size_t>(spec.sample_stride) == 0 || k == n) {
      rec.record(k == n ? spec.duration : static_cast<double>(k) * spec.dt, y);
    }
  }
}

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

void integrate_rk45(const CascadeSystem& system, Vec y, const IntegratorSpec& spec,
                    Recorder& rec) {
  auto& stats = rec.traj.stats;
  if (spec.duration == 0.0) return;
  double t = 0.0;
  double h = std::min(spec.dt, spec.dt_max);
  std::size_t since_sample = 0;
  Vec k1, k2, k3, k4, k5, k6, k7;
  eval_rhs_into(system, y, k1);
  check_stage(k1, 1);

  while (t < spec.duration) {
    const bool last = t + h >= spec.duration;
    const double step = last ? spec.duration - t : h;

    // A non-finite trial stage is treated as a rejected step.
    bool finite = true;
    auto stage = [&](const Vec& arg, Vec& k) {
      if (!finite) return;
      eval_rhs_into(system, arg, k);
      finite = std::all_of(k.begin(), k.end(), [](double x) { return std::isfinite(x); });
    };
    stage(combine(y, step, {{a21, &k1}}), k2);
    stage(combine(y, step, {{a31, &k1}, {a32, &k2}}), k3);
    stage(combine(y, step, {{a41, &k1}, {a42, &k2}, {a43, &k3}}), k4);
    stage(combine(y, step, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}), k5);
    stage(combine(y, step, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}), k6);
    Vec y_new;
    if (finite) y_new = combine(y, step, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    stage(y_new, k7);

    double err = finite ? 0.0 : HUGE_VAL;
    for (std::size_t i = 0; finite && i < y.size(); ++i) {
      const double ei = step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                e6 * k6[i] + e7 * k7[i]);
      const double sc = spec.abs_tol + spec.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err = std::max(err, std::abs(ei) / sc);
    }
    if (std::isnan(err)) err = HUGE_VAL;

    const double factor =
        err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    if (err <= 1.0) {
      t = last ? spec.duration : t + step;
      y = std::move(y_new);
      k1 = k7;
      ++stats.accepted;
      stats.smallest_step = stats.accepted == 1 ? step : std::min(stats.smallest_step, step);
      stats.largest_step = std::max(stats.largest_step, step);
      if (++since_sample == static_cast<std::size_t>(spec.sample_stride) || last) {
        rec.record(t, y);
        since_sample = 0;
      }
      h = std::min(h * factor, spec.dt_max);
      if (last) break;
    } else {
      ++stats.rejected;
      h = step * factor;
      if (h < spec.dt_min) {
        throw IntegrationFailure("RK45 step size " + std::to_string(h) +
                                     " fell below dt_min at t = " + std::to_string(t),
                                 t);
      }
    }
  }
}

}  // namespace

ShellState step_rk4(const CascadeSystem& system, const ShellState& state, double dt) {
  if (!(dt > 0.0)) throw ConfigError("step_rk4: dt must be > 0");
  if (state.r() != system.r()) throw ConfigError("step_rk4: dimension mismatch");
  return ShellState(rk4_step(system, Vec(state.values().begin(), state.values().end()), dt));
}

Trajectory integrate(const CascadeSystem& system, const ShellState& state0,
                     const IntegratorSpec& spec, const WeightMatrix& energy_weight,
                     const std::optional<WeightMatrix>& second_weight) {
  spec.validate();
  if (state0.r() != system.r()) throw ConfigError("integrate: dimension mismatch");
  Trajectory traj;
  traj.spec = spec;
  if (second_weight) traj.second.emplace();
  Recorder rec{traj, energy_weight, second_weight};
  Vec y(state0.values().begin(), state0.values().end());
  rec.record(0.0, y);
  if (spec.method == Method::RK4) {
    integrate_rk4(system, std::move(y), spec, rec);
  } else {
    integrate_rk45(system, std::move(y), spec, rec);
  }
  return traj;
}

std::vector<double> drift_report(const Trajectory& traj, const std::vector<WeightMatrix>& weights) {
  if (traj.size() == 0) throw RangeError("drift_report: empty trajectory");
  std::vector<double> out;
  for (const auto& w : weights) {
    const double q0 = quadratic_form(w, traj.states.front());
    const double denom = std::max(std::abs(q0), 1e-300);
    double drift = 0.0;
    for (const auto& s : traj.states) drift = std::max(drift, std::abs(quadratic_form(w, s) - q0) / denom);
    out.push_back(drift);
  }
  return out;
}

SpectrumReport time_avg_spectrum(const Trajectory& traj, double p, double t0, double t1,
                                 std::optional<ShellRange> shells) {
  if (traj.size() == 0) throw RangeError("time_avg_spectrum: empty trajectory");
  const double slack = 1e-12 * std::max(1.0, std::abs(traj.times.back()));
  if (t0 > t1 || t0 < traj.times.front() - slack || t1 > traj.times.back() + slack) {
    throw RangeError("averaging window lies outside the trajectory span");
  }
  SpectrumReport report;
  report.t0 = t0;
  report.t1 = t1;
  report.mean_energy.assign(traj.states.front().size(), 0.0);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (traj.times[k] < t0 - slack || traj.times[k] > t1 + slack) continue;
    const auto e = energy(traj.states[k], p);
    for (std::size_t i = 0; i < e.per_shell.size(); ++i) report.mean_energy[i] += e.per_shell[i];
    ++report.samples;
  }
  if (report.samples == 0) throw RangeError("averaging window contains no samples");
  for (auto& e : report.mean_energy) e /= static_cast<double>(report.samples);
  const int r = static_cast<int>(report.mean_energy.size()) - 1;
  report.slope = fit_spectrum_slope(report.mean_energy, p, shells.value_or(ShellRange{0, r}));
  return report;
}

ShellState GoyCorrespondence::to_goy(const ShellState& v) const {
  std::vector<double> out(v.values().begin(), v.values().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= std::pow(p, 0.5 * static_cast<double>(i));
  return ShellState(std::move(out));
}

ShellState GoyCorrespondence::from_goy(const ShellState& v) const {
  std::vector<double> out(v.values().begin(), v.values().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= std::pow(p, -0.5 * static_cast<double>(i));
  return ShellState(std::move(out));
}

GoyCorrespondence goy_map(int p, double h0) {
  integer_base(p);
  const double q = 1.0 - 1.0 / p;
  const double root = std::sqrt(static_cast<double>(p));
  return GoyCorrespondence{static_cast<double>(p), 1.0 + root, h0 * q * q * q * (p - root),
                           static_cast<double>(p)};
}

nlohmann::json to_json(const StepStatistics& stats) {
  return {{"accepted", stats.accepted},
          {"rejected", stats.rejected},
          {"smallest_step", stats.smallest_step},
          {"largest_step", stats.largest_step}};
}

}  // namespace cascade
