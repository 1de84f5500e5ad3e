#include "cascade_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>

#include <fmt/format.h>

#include "cascade/builders.hpp"
#include "cascade/errors.hpp"
#include "cascade/invariants.hpp"
#include "cascade/random.hpp"
#include "cascade/stationary.hpp"

#ifndef CASCADE_VERSION
#define CASCADE_VERSION "unknown"
#endif

namespace cascade::cli {

namespace {

using nlohmann::json;

std::string num(double x) { return fmt::format("{:.17g}", x); }

class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& path() const { return dir_; }

  void write(const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir_);
    std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + (dir_ / name).string());
    out << content;
    if (!out) throw Error("write failed for " + (dir_ / name).string());
    files_.push_back(name);
  }

  void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

  std::vector<std::string> files() const {
    auto f = files_;
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

struct Context {
  const RunConfig& cfg;
  const RunFlags& flags;
  OutputDir& out;
  std::vector<std::string>& warnings;
  json summary = json::object();
  bool verdict_failed = false;
};

std::string table_file(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows, bool first_is_int) {
  std::string s;
  for (std::size_t k = 0; k < header.size(); ++k) s += (k ? "," : "") + header[k];
  s += "\n";
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) s += ",";
      s += (k == 0 && first_is_int) ? fmt::format("{}", static_cast<long long>(row[k])) : num(row[k]);
    }
    s += "\n";
  }
  return s;
}

void write_table(Context& ctx, const std::string& stem, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows, bool first_is_int) {
  if (ctx.flags.format == OutputFormat::Csv) {
    ctx.out.write(stem + ".csv", table_file(header, rows, first_is_int));
    return;
  }
  json cols = json::object();
  for (std::size_t k = 0; k < header.size(); ++k) {
    json col = json::array();
    for (const auto& row : rows) {
      if (k == 0 && first_is_int) {
        col.push_back(static_cast<long long>(row[k]));
      } else {
        col.push_back(row[k]);
      }
    }
    cols[header[k]] = col;
  }
  ctx.out.write_json(stem + ".json", cols);
}

struct Candidate {
  std::string name;
  std::string weight;
  WeightMatrix w;
  bool required;
};

std::vector<Candidate> audit_candidates(const ModelSpec& m) {
  std::vector<Candidate> c;
  c.push_back({"E", m.family == Family::GOY ? "1" : "(1-1/p) p^i", natural_energy_weights(m), true});
  switch (m.family) {
    case Family::GOY:
      if (m.eps != 1.0) c.push_back({"H", "(eps-1)^-i", second_invariant_weights(m), true});
      break;
    case Family::S2OffDiag:
      c.push_back({"H_model", "h0/p p^((gamma+2)i) offdiagonal", second_invariant_weights(m), true});
      break;
    default:
      c.push_back({"H_model", "p^((gamma+2)i)", second_invariant_weights(m), true});
      c.push_back({"H_solved", "p^((gamma+1)i)", power_weights(m.p, m.gamma + 1.0, m.r), false});
      break;
  }
  return c;
}

void cmd_build(Context& ctx) {
  const auto table = build(ctx.cfg.model);
  ctx.out.write("coupling.tsv", table.to_text());
  ctx.summary["entries"] = table.size();
}

void cmd_audit(Context& ctx) {
  const auto& m = ctx.cfg.model;
  const auto table = build(m);
  json reports = json::array();
  for (const auto& cand : audit_candidates(m)) {
    const auto rep = audit_conservation(table, cand.w, ctx.cfg.audit.n_samples, ctx.cfg.seed,
                                        ctx.cfg.audit.tol, cand.name);
    auto j = to_json(rep);
    j["weight"] = cand.weight;
    j["required"] = cand.required;
    reports.push_back(j);
    if (cand.required && rep.verdict == Verdict::Violated) ctx.verdict_failed = true;
    ctx.summary[cand.name] = to_string(rep.verdict);
  }
  json bases = json::object();
  for (int band : {0, 1}) bases[fmt::format("bandwidth_{}", band)] = to_json(solve_invariant_weights(table, band));
  ctx.out.write_json("audit.json", {{"family", std::string(to_string(m.family))},
                                    {"reports", reports},
                                    {"invariant_basis", bases}});
}

void cmd_scan(Context& ctx) {
  const auto& m = ctx.cfg.model;
  const auto& s = ctx.cfg.scan;
  const int p = integer_base(m.p);
  const auto report = gamma_scan(m.family, p, m.r, s.lo, s.hi, s.grid_step, s.tol);
  auto j = to_json(report);
  json direct = json::array();
  for (const auto& root : report.roots) {
    ModelSpec at = m;
    at.gamma = root.gamma;
    at.h0 = 1.0;
    direct.push_back(bulk_residual(build(at), stationary_profile(p, m.r, 1.0)).max_abs());
  }
  j["direct_residuals"] = direct;
  ctx.out.write_json("scan.json", j);
  const bool all_match = std::all_of(report.matches.begin(), report.matches.end(), [](bool b) { return b; });
  if (!all_match) ctx.verdict_failed = true;
  ctx.summary["roots"] = report.roots.size();
  ctx.summary["claims_matched"] = all_match;
}

std::optional<WeightMatrix> model_second(const ModelSpec& m) {
  if (m.family == Family::GOY && m.eps == 1.0) return std::nullopt;
  return second_invariant_weights(m);
}

void cmd_simulate(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto& m = cfg.model;
  const auto table = build(m);
  const auto system = make_system(cfg, table);
  const auto v0 = make_initial_state(cfg);
  const auto& spec = cfg.integrator;

  const double stiff = system.nu.max_diagonal() * spec.dt;
  if (stiff > 0.1) {
    ctx.warnings.push_back(fmt::format("nu_r * dt = {} exceeds 0.1; explicit steps may be unstable", num(stiff)));
  }

  const auto energy_w = natural_energy_weights(m);
  const auto second_w = model_second(m);
  const auto traj = integrate(system, v0, spec, energy_w, second_w);

  std::vector<std::string> header{"t"};
  for (int i = 0; i <= m.r; ++i) header.push_back(fmt::format("V{}", i));
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    std::vector<double> row{traj.times[k]};
    row.insert(row.end(), traj.states[k].values().begin(), traj.states[k].values().end());
    rows.push_back(std::move(row));
  }
  write_table(ctx, "trajectory", header, rows, false);

  std::vector<WeightMatrix> weights{energy_w};
  std::vector<std::string> names{"E"};
  for (const auto& cand : audit_candidates(m)) {
    if (cand.name == "E") continue;
    weights.push_back(cand.w);
    names.push_back(cand.name);
  }
  const auto drifts = drift_report(traj, weights);
  json drift = json::object();
  for (std::size_t k = 0; k < names.size(); ++k) drift[names[k]] = drifts[k];

  const double t0 = cfg.spectrum.t0.value_or(0.0);
  const double t1 = cfg.spectrum.t1.value_or(traj.times.back());
  std::optional<ShellRange> range;
  if (cfg.spectrum.lo) range = ShellRange{*cfg.spectrum.lo, *cfg.spectrum.hi};
  json spectrum = {{"t0", t0}, {"t1", t1}};
  try {
    const auto rep = time_avg_spectrum(traj, m.p, t0, t1, range);
    std::vector<std::vector<double>> srows;
    for (std::size_t i = 0; i < rep.mean_energy.size(); ++i) {
      srows.push_back({static_cast<double>(i), rep.mean_energy[i]});
    }
    write_table(ctx, "spectrum", {"shell", "E_i"}, srows, true);
    spectrum["samples"] = rep.samples;
    spectrum["slope"] = rep.slope;
  } catch (const DomainError& e) {
    spectrum["slope"] = nullptr;
    spectrum["error"] = e.what();
    ctx.warnings.push_back(std::string("spectrum not fitted: ") + e.what());
  }

  ctx.out.write_json("drift.json", {{"drift", drift},
                                    {"samples", traj.size()},
                                    {"final_time", traj.times.back()},
                                    {"steps", to_json(traj.stats)},
                                    {"spectrum", spectrum}});
  ctx.summary["energy_drift"] = drifts[0];
}

void cmd_goy_check(Context& ctx) {
  const auto& m = ctx.cfg.model;
  if (m.family != Family::S2Diag) throw ConfigError("goy-check needs model.family = S2Diag");
  const int p = integer_base(m.p);
  const int r = m.r;
  const auto map = goy_map(p, m.h0);
  const auto s2 = build_s2_diag(p, r, -0.5, m.h0);
  const auto goy = build_goy(map.lambda, map.eps, map.a, r);
  const auto shells = interior_shells(s2);

  constexpr int kStates = 100;
  double max_rel = 0.0;
  for (int k = 0; k < kStates; ++k) {
    UniformSampler sampler(ctx.cfg.seed, static_cast<std::uint64_t>(k));
    const auto V = sampler.uniform_vector(static_cast<std::size_t>(r) + 1, -1.0, 1.0);
    const auto v = map.to_goy(ShellState(V));
    const std::vector<double> vv(v.values().begin(), v.values().end());
    const auto lhs = quadratic_rhs(s2, V);
    const auto rhs = quadratic_rhs(goy, vv);
    std::vector<double> magnitude(static_cast<std::size_t>(r) + 1, 0.0);
    for (const auto& e : goy.entries()) magnitude[e.shell] += std::abs(e.c * v[e.shell + e.a] * v[e.shell + e.b]);
    for (int i = shells.lo; i <= shells.hi; ++i) {
      if (magnitude[i] == 0.0) continue;
      const double diff = std::abs(std::pow(p, 0.5 * i) * lhs[i] - rhs[i]);
      max_rel = std::max(max_rel, diff / magnitude[i]);
    }
  }

  double weight_rel = 0.0;
  for (int i = 0; i <= r; ++i) {
    const double pulled = std::pow(map.eps - 1.0, -i) * std::pow(p, i);
    const double expected = std::pow(p, 0.5 * i);
    weight_rel = std::max(weight_rel, std::abs(pulled - expected) / expected);
  }

  constexpr double kTol = 1e-12;
  const bool pass = max_rel <= kTol && weight_rel <= kTol;
  if (!pass) ctx.verdict_failed = true;
  ctx.out.write_json("goy_check.json", {{"p", p},
                                        {"h0", m.h0},
                                        {"gamma", -0.5},
                                        {"lambda", map.lambda},
                                        {"eps", map.eps},
                                        {"a", map.a},
                                        {"seed", ctx.cfg.seed},
                                        {"n_states", kStates},
                                        {"shells", {shells.lo, shells.hi}},
                                        {"max_relative_rhs_error", max_rel},
                                        {"pulled_back_weight", "(eps-1)^-i p^i"},
                                        {"pulled_back_weight_max_relative_diff", weight_rel},
                                        {"tol", kTol},
                                        {"pass", pass}});
  ctx.summary["pass"] = pass;
}

void cmd_stationary(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto& m = cfg.model;
  const double c = cfg.initial && cfg.initial->kind == InitialKind::Stationary ? cfg.initial->c : 1.0;
  const auto table = build(m);
  const auto profile = stationary_profile(m.p, m.r, c);
  const auto res = bulk_residual(table, profile);

  std::vector<std::vector<double>> rows;
  for (int i = res.shells.lo; i <= res.shells.hi; ++i) {
    rows.push_back({static_cast<double>(i), res.values[i - res.shells.lo]});
  }
  write_table(ctx, "residuals", {"shell", "residual"}, rows, true);

  const auto e = energy(profile, m.p);
  std::vector<std::vector<double>> srows;
  for (std::size_t i = 0; i < e.per_shell.size(); ++i) srows.push_back({static_cast<double>(i), e.per_shell[i]});
  write_table(ctx, "spectrum", {"shell", "E_i"}, srows, true);

  const double slope = spectrum_exponent(profile, m.p);
  const double max_abs = res.max_abs();
  const bool stationary = !res.degenerate && max_abs <= cfg.scan.tol;
  if (!stationary) ctx.verdict_failed = true;
  ctx.out.write_json("stationary.json", {{"c", c},
                                         {"shells", {res.shells.lo, res.shells.hi}},
                                         {"degenerate", res.degenerate},
                                         {"max_abs_residual", res.degenerate ? json(nullptr) : json(max_abs)},
                                         {"tol", cfg.scan.tol},
                                         {"stationary", stationary},
                                         {"spectrum_exponent", slope}});
  ctx.summary["spectrum_exponent"] = slope;
  ctx.summary["stationary"] = stationary;
}

const std::map<std::string, std::function<void(Context&)>>& registry() {
  static const std::map<std::string, std::function<void(Context&)>> r = {
      {"build", cmd_build},       {"audit", cmd_audit},         {"scan", cmd_scan},
      {"simulate", cmd_simulate}, {"goy-check", cmd_goy_check}, {"stationary", cmd_stationary}};
  return r;
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names = {"build",    "audit",     "scan",
                                                 "simulate", "goy-check", "stationary"};
  return names;
}

RunResult run_subcommand(const std::string& name, RunConfig cfg, const RunFlags& flags,
                         std::ostream& log) {
  RunResult result;
  const auto it = registry().find(name);
  if (it == registry().end()) {
    result.exit_code = kExitConfig;
    result.error = "unknown subcommand '" + name + "'";
    log << "error: " << result.error << "\n";
    return result;
  }
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.out) cfg.output_dir = *flags.out;
  result.out_dir = cfg.output_dir;

  OutputDir out(result.out_dir);
  Context ctx{cfg, flags, out, result.warnings};
  try {
    it->second(ctx);
    if (flags.strict && ctx.verdict_failed) result.exit_code = kExitVerdict;
  } catch (const ConfigError& e) {
    result.exit_code = kExitConfig;
    result.error = e.what();
  } catch (const UnsupportedError& e) {
    result.exit_code = kExitConfig;
    result.error = e.what();
  } catch (const Error& e) {
    result.exit_code = kExitNumeric;
    result.error = e.what();
  }

  for (const auto& w : result.warnings) log << "warning: " << w << "\n";
  if (!result.error.empty()) log << "error: " << result.error << "\n";

  json manifest = {{"tool", "cascade"},
                   {"version", CASCADE_VERSION},
                   {"subcommand", name},
                   {"seed", cfg.seed},
                   {"strict", flags.strict},
                   {"format", flags.format == OutputFormat::Csv ? "csv" : "json"},
                   {"config", cfg.to_json()},
                   {"exit_code", result.exit_code},
                   {"verdict_failed", ctx.verdict_failed},
                   {"summary", ctx.summary},
                   {"warnings", result.warnings}};
  if (!result.error.empty()) manifest["error"] = result.error;
  auto files = out.files();
  files.push_back("manifest.json");
  std::sort(files.begin(), files.end());
  manifest["files"] = files;
  try {
    out.write_json("manifest.json", manifest);
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    if (result.exit_code == kExitOk) result.exit_code = kExitNumeric;
  }
  result.files = files;
  return result;
}

RunResult run_from_file(const std::string& name, const std::filesystem::path& config_path,
                        const RunFlags& flags, std::ostream& log) {
  RunConfig cfg;
  try {
    cfg = parse_config(config_path);
  } catch (const Error& e) {
    RunResult result;
    result.exit_code = kExitConfig;
    result.error = e.what();
    log << "error: " << config_path.string() << ": " << e.what() << "\n";
    return result;
  }
  return run_subcommand(name, std::move(cfg), flags, log);
}

}  // namespace cascade::cli
