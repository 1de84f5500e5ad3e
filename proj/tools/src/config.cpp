#include "cascade_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "cascade/errors.hpp"
#include "cascade/stationary.hpp"
#include "cascade/random.hpp"

namespace cascade::cli {

namespace {

using nlohmann::json;

// Reads keys from one object and rejects whatever was not read.
class Block {
 public:
  Block(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(fmt::format("'{}' must be an object", path_));
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  template <class T>
  std::optional<T> opt(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) return std::nullopt;
    return get<T>(key);
  }

  template <class T>
  T req(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) throw ConfigError(fmt::format("missing required key '{}'", name(key)));
    return get<T>(key);
  }

  template <class T>
  T def(const std::string& key, T fallback) {
    return opt<T>(key).value_or(fallback);
  }

  Block child(const std::string& key) {
    seen_.insert(key);
    return Block(j_.at(key), name(key));
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError(fmt::format("unknown key '{}'", name(key)));
    }
  }

  std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  template <class T>
  T get(const std::string& key) const {
    const json& v = j_.at(key);
    if constexpr (std::is_same_v<T, int> || std::is_same_v<T, std::uint64_t>) {
      if (!v.is_number_integer()) throw ConfigError(fmt::format("'{}' must be an integer", name(key)));
      if constexpr (std::is_same_v<T, std::uint64_t>) {
        if (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0) {
          throw ConfigError(fmt::format("'{}' must be non-negative", name(key)));
        }
      }
    } else if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw ConfigError(fmt::format("'{}' must be a number", name(key)));
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError(fmt::format("'{}' must be a string", name(key)));
    } else if constexpr (std::is_same_v<T, std::vector<double>>) {
      if (!v.is_array()) throw ConfigError(fmt::format("'{}' must be an array", name(key)));
      for (const auto& x : v) {
        if (!x.is_number()) throw ConfigError(fmt::format("'{}' must contain numbers", name(key)));
      }
    }
    return v.get<T>();
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void parse_model(Block b, ModelSpec& m) {
  m.family = family_from_string(b.req<std::string>("family"));
  m.r = b.req<int>("r");
  if (m.family == Family::GOY) {
    m.p = b.req<double>("lambda");
    m.eps = b.req<double>("eps");
    m.a = b.req<double>("a");
    m.h0 = m.a;
  } else {
    m.p = b.req<double>("p");
    m.gamma = b.req<double>("gamma");
    m.h0 = b.def<double>("h0", 1.0);
    if (m.family == Family::General) {
      m.s = b.def<int>("s", 2);
      m.alpha = b.def<double>("alpha", 0.0);
    }
  }
  m.l0 = b.opt<double>("l0");
  b.finish();
  m.validate();
}

void parse_dissipation(Block b, DissipationConfig& d) {
  d.nu0 = b.def<double>("nu0", 0.0);
  d.matrix_path = b.opt<std::string>("matrix");
  b.finish();
  if (!std::isfinite(d.nu0) || d.nu0 < 0.0) throw ConfigError("'dissipation.nu0' must be >= 0");
  if (d.matrix_path && d.nu0 != 0.0) {
    throw ConfigError("'dissipation' takes either nu0 or matrix, not both");
  }
}

void parse_forcing(Block b, ForcingConfig& f, int r) {
  const auto type = b.req<std::string>("type");
  if (type == "none") {
    f.kind = ForcingKind::None;
  } else if (type == "vector") {
    f.kind = ForcingKind::Vector;
    f.values = b.req<std::vector<double>>("values");
    if (static_cast<int>(f.values.size()) != r + 1) {
      throw ConfigError(fmt::format("'forcing.values' must have r + 1 = {} entries", r + 1));
    }
  } else if (type == "balance-boundary") {
    f.kind = ForcingKind::BalanceBoundary;
    f.c = b.opt<double>("c");
    if (f.c && *f.c == 0.0) throw ConfigError("'forcing.c' must be nonzero");
  } else {
    throw ConfigError("'forcing.type' must be none, vector or balance-boundary, got '" + type + "'");
  }
  b.finish();
}

void parse_initial(Block b, InitialConfig& ic, int r) {
  const auto type = b.req<std::string>("type");
  if (type == "stationary") {
    ic.kind = InitialKind::Stationary;
    ic.c = b.def<double>("c", 1.0);
    if (ic.c == 0.0 || !std::isfinite(ic.c)) throw ConfigError("'initial.c' must be nonzero");
  } else if (type == "random") {
    ic.kind = InitialKind::Random;
    ic.amplitude = b.def<double>("amplitude", 0.1);
    if (!(ic.amplitude > 0.0)) throw ConfigError("'initial.amplitude' must be > 0");
  } else if (type == "single_shell") {
    ic.kind = InitialKind::SingleShell;
    ic.shell = b.req<int>("shell");
    ic.value = b.def<double>("value", 1.0);
    if (ic.shell < 0 || ic.shell > r) throw ConfigError("'initial.shell' must lie in [0, r]");
  } else {
    throw ConfigError("'initial.type' must be stationary, random or single_shell, got '" + type + "'");
  }
  b.finish();
}

void parse_integrator(Block b, IntegratorSpec& s) {
  s.method = method_from_string(b.def<std::string>("method", "RK4"));
  s.dt = b.def<double>("dt", s.dt);
  s.duration = b.def<double>("T", s.duration);
  s.sample_stride = b.def<int>("sample_stride", s.sample_stride);
  s.rel_tol = b.def<double>("rel_tol", s.rel_tol);
  s.abs_tol = b.def<double>("abs_tol", s.abs_tol);
  s.dt_min = b.def<double>("dt_min", s.dt_min);
  s.dt_max = b.def<double>("dt_max", s.dt_max);
  b.finish();
  s.validate();
}

std::string to_string(ForcingKind k) {
  switch (k) {
    case ForcingKind::None: return "none";
    case ForcingKind::Vector: return "vector";
    case ForcingKind::BalanceBoundary: return "balance-boundary";
  }
  return "none";
}

std::string to_string(InitialKind k) {
  switch (k) {
    case InitialKind::Stationary: return "stationary";
    case InitialKind::Random: return "random";
    case InitialKind::SingleShell: return "single_shell";
  }
  return "stationary";
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  RunConfig cfg;
  cfg.base_dir = base_dir;
  Block root(doc, "");
  if (!root.has("model")) throw ConfigError("missing required block 'model'");
  parse_model(root.child("model"), cfg.model);
  if (root.has("dissipation")) parse_dissipation(root.child("dissipation"), cfg.dissipation);
  if (root.has("forcing")) parse_forcing(root.child("forcing"), cfg.forcing, cfg.model.r);
  if (root.has("initial")) {
    cfg.initial.emplace();
    parse_initial(root.child("initial"), *cfg.initial, cfg.model.r);
  }
  if (root.has("integrator")) parse_integrator(root.child("integrator"), cfg.integrator);
  if (root.has("audit")) {
    auto b = root.child("audit");
    cfg.audit.n_samples = b.def<int>("n_samples", cfg.audit.n_samples);
    cfg.audit.tol = b.def<double>("tol", cfg.audit.tol);
    b.finish();
    if (cfg.audit.n_samples < 1) throw ConfigError("'audit.n_samples' must be >= 1");
    if (!(cfg.audit.tol > 0.0)) throw ConfigError("'audit.tol' must be > 0");
  }
  if (root.has("scan")) {
    auto b = root.child("scan");
    cfg.scan.lo = b.def<double>("lo", cfg.scan.lo);
    cfg.scan.hi = b.def<double>("hi", cfg.scan.hi);
    cfg.scan.grid_step = b.def<double>("grid_step", cfg.scan.grid_step);
    cfg.scan.tol = b.def<double>("tol", cfg.scan.tol);
    b.finish();
    if (!(cfg.scan.lo < cfg.scan.hi)) throw ConfigError("'scan.lo' must be below 'scan.hi'");
    if (!(cfg.scan.grid_step > 0.0)) throw ConfigError("'scan.grid_step' must be > 0");
    if (!(cfg.scan.tol > 0.0)) throw ConfigError("'scan.tol' must be > 0");
  }
  if (root.has("spectrum")) {
    auto b = root.child("spectrum");
    cfg.spectrum.t0 = b.opt<double>("t0");
    cfg.spectrum.t1 = b.opt<double>("t1");
    cfg.spectrum.lo = b.opt<int>("lo");
    cfg.spectrum.hi = b.opt<int>("hi");
    b.finish();
    if (cfg.spectrum.lo.has_value() != cfg.spectrum.hi.has_value()) {
      throw ConfigError("'spectrum.lo' and 'spectrum.hi' must be given together");
    }
  }
  if (root.has("output")) {
    auto b = root.child("output");
    cfg.output_dir = b.def<std::string>("dir", cfg.output_dir);
    b.finish();
  }
  cfg.seed = root.def<std::uint64_t>("seed", cfg.seed);
  root.finish();
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path.parent_path());
}

nlohmann::json RunConfig::to_json() const {
  json model_j = {{"family", std::string(cascade::to_string(model.family))}, {"r", model.r}};
  if (model.family == Family::GOY) {
    model_j["lambda"] = model.p;
    model_j["eps"] = model.eps;
    model_j["a"] = model.a;
  } else {
    model_j["p"] = static_cast<int>(model.p);
    model_j["gamma"] = model.gamma;
    model_j["h0"] = model.h0;
    if (model.family == Family::General) {
      model_j["s"] = model.s;
      model_j["alpha"] = model.alpha;
    }
  }
  if (model.l0) model_j["l0"] = *model.l0;

  json diss = {{"nu0", dissipation.nu0}};
  if (dissipation.matrix_path) diss["matrix"] = *dissipation.matrix_path;

  json forcing_j = {{"type", to_string(forcing.kind)}};
  if (forcing.kind == ForcingKind::Vector) forcing_j["values"] = forcing.values;
  if (forcing.kind == ForcingKind::BalanceBoundary && forcing.c) forcing_j["c"] = *forcing.c;

  json out = {{"model", model_j},
              {"dissipation", diss},
              {"forcing", forcing_j},
              {"integrator",
               {{"method", cascade::to_string(integrator.method)},
                {"dt", integrator.dt},
                {"T", integrator.duration},
                {"sample_stride", integrator.sample_stride},
                {"rel_tol", integrator.rel_tol},
                {"abs_tol", integrator.abs_tol},
                {"dt_min", integrator.dt_min},
                {"dt_max", integrator.dt_max}}},
              {"audit", {{"n_samples", audit.n_samples}, {"tol", audit.tol}}},
              {"scan",
               {{"lo", scan.lo}, {"hi", scan.hi}, {"grid_step", scan.grid_step}, {"tol", scan.tol}}},
              {"output", {{"dir", output_dir}}},
              {"seed", seed}};
  if (initial) {
    json ic = {{"type", to_string(initial->kind)}};
    switch (initial->kind) {
      case InitialKind::Stationary: ic["c"] = initial->c; break;
      case InitialKind::Random: ic["amplitude"] = initial->amplitude; break;
      case InitialKind::SingleShell:
        ic["shell"] = initial->shell;
        ic["value"] = initial->value;
        break;
    }
    out["initial"] = ic;
  }
  json spec = json::object();
  if (spectrum.t0) spec["t0"] = *spectrum.t0;
  if (spectrum.t1) spec["t1"] = *spectrum.t1;
  if (spectrum.lo) spec["lo"] = *spectrum.lo;
  if (spectrum.hi) spec["hi"] = *spectrum.hi;
  out["spectrum"] = spec;
  return out;
}

namespace {

std::vector<double> read_matrix(const std::filesystem::path& path, int r) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dissipation matrix '" + path.string() + "'");
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    std::stringstream parts(token);
    std::string item;
    while (std::getline(parts, item, ',')) {
      if (item.empty()) continue;
      char* end = nullptr;
      const double x = std::strtod(item.c_str(), &end);
      if (end == item.c_str() || *end != '\0') {
        throw ConfigError("dissipation matrix: bad number '" + item + "'");
      }
      values.push_back(x);
    }
  }
  const auto n = static_cast<std::size_t>(r + 1);
  if (values.size() != n * n) {
    throw ConfigError(fmt::format("dissipation matrix must hold {} numbers, found {}", n * n,
                                  values.size()));
  }
  return values;
}

}  // namespace

CascadeSystem make_system(const RunConfig& cfg, const CouplingTable& table) {
  const int r = cfg.model.r;
  Dissipation nu = Dissipation::none(r);
  if (cfg.dissipation.matrix_path) {
    nu = Dissipation::matrix(r, read_matrix(cfg.base_dir / *cfg.dissipation.matrix_path, r));
  } else if (cfg.dissipation.nu0 > 0.0) {
    nu = Dissipation::diagonal_law(cfg.dissipation.nu0, cfg.model.p, r);
  }

  Forcing f = Forcing::none(r);
  switch (cfg.forcing.kind) {
    case ForcingKind::None: break;
    case ForcingKind::Vector: f.f = cfg.forcing.values; break;
    case ForcingKind::BalanceBoundary: {
      double c = 1.0;
      if (cfg.forcing.c) {
        c = *cfg.forcing.c;
      } else if (cfg.initial && cfg.initial->kind == InitialKind::Stationary) {
        c = cfg.initial->c;
      }
      const auto profile = stationary_profile(cfg.model.p, r, c);
      const auto q = quadratic_rhs(table, {profile.values().begin(), profile.values().end()});
      const int band = 2 * cfg.model.range();
      for (int i = 0; i <= r; ++i) {
        if (i < band || i > r - band) f.f[i] = -q[i];
      }
      break;
    }
  }
  return CascadeSystem{table, std::move(nu), std::move(f)};
}

ShellState make_initial_state(const RunConfig& cfg) {
  if (!cfg.initial) throw ConfigError("missing required block 'initial'");
  const auto& ic = *cfg.initial;
  const int r = cfg.model.r;
  switch (ic.kind) {
    case InitialKind::Stationary: return stationary_profile(cfg.model.p, r, ic.c);
    case InitialKind::Random: {
      UniformSampler sampler(cfg.seed);
      std::vector<double> v(static_cast<std::size_t>(r) + 1);
      for (int i = 0; i <= r; ++i) {
        v[i] = ic.amplitude * sampler.uniform(-1.0, 1.0) * std::pow(cfg.model.p, -5.0 * i / 6.0);
      }
      return ShellState(std::move(v));
    }
    case InitialKind::SingleShell: {
      std::vector<double> v(static_cast<std::size_t>(r) + 1, 0.0);
      v[ic.shell] = ic.value;
      return ShellState(std::move(v));
    }
  }
  throw ConfigError("unknown initial condition");
}

}  // namespace cascade::cli
