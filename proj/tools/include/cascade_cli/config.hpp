#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cascade/dynamics.hpp"
#include "cascade/model_spec.hpp"
#include "cascade/rhs.hpp"

namespace cascade::cli {

struct DissipationConfig {
  double nu0 = 0.0;
  /// Row-major (r+1)^2 matrix file, resolved against the config directory.
  std::optional<std::string> matrix_path;
};

enum class ForcingKind { None, Vector, BalanceBoundary };

struct ForcingConfig {
  ForcingKind kind = ForcingKind::None;
  std::vector<double> values;
  /// Profile amplitude for balance-boundary.
  std::optional<double> c;
};

enum class InitialKind { Stationary, Random, SingleShell };

struct InitialConfig {
  InitialKind kind = InitialKind::Stationary;
  double c = 1.0;
  double amplitude = 0.1;
  int shell = 0;
  double value = 1.0;
};

struct AuditConfig {
  int n_samples = 200;
  double tol = 1e-12;
};

struct ScanConfig {
  double lo = -3.0;
  double hi = 3.0;
  double grid_step = 1e-3;
  double tol = 1e-9;
};

struct SpectrumConfig {
  std::optional<double> t0;
  std::optional<double> t1;
  std::optional<int> lo;
  std::optional<int> hi;
};

struct RunConfig {
  ModelSpec model;
  DissipationConfig dissipation;
  ForcingConfig forcing;
  std::optional<InitialConfig> initial;
  IntegratorSpec integrator;
  AuditConfig audit;
  ScanConfig scan;
  SpectrumConfig spectrum;
  std::string output_dir = "cascade_out";
  std::uint64_t seed = 1;
  /// Directory of the config file; relative paths resolve against it.
  std::filesystem::path base_dir;

  /// Fully resolved config, defaults included.
  nlohmann::json to_json() const;
};

/// Strict parse: unknown keys, wrong types and violated constraints throw
/// ConfigError naming the key (and line/column for syntax errors).
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir = {});

CascadeSystem make_system(const RunConfig& cfg, const CouplingTable& table);
ShellState make_initial_state(const RunConfig& cfg);

}  // namespace cascade::cli
