#include <cstdint>
#include <iostream>
#include <map>
#include <string>

#include <CLI11/CLI11.hpp>

#include "cascade_cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"cascade: build, audit, scan and integrate shell cascade models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(CASCADE_VERSION));

  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  bool strict = false;
  std::string format = "csv";

  const std::map<std::string, std::string> about = {
      {"build", "write the canonical coupling table (coupling.tsv)"},
      {"audit", "check energy and candidate second invariants, solve for invariant weights"},
      {"scan", "scan gamma for stationary 2/3-law profiles (scan.json)"},
      {"simulate", "integrate the model (trajectory, spectrum, drift.json)"},
      {"goy-check", "compare the gamma = -1/2 model with its GOY counterpart"},
      {"stationary", "bulk residuals and spectrum exponent of the p^(-5i/6) profile"},
  };
  for (const auto& name : cascade::cli::subcommand_names()) {
    auto* sub = app.add_subcommand(name, about.at(name));
    sub->add_option("--config", config, "JSON run config")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory (overrides output.dir)");
    sub->add_option("--seed", seed, "seed (overrides the config seed)");
    sub->add_flag("--strict", strict, "exit 3 when an audit or scan verdict fails");
    sub->add_option("--format", format, "table format")->check(CLI::IsMember({"csv", "json"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cascade::cli::kExitConfig;
  }

  cascade::cli::RunFlags flags;
  if (!out.empty()) flags.out = out;
  if (app.get_subcommands().front()->count("--seed")) flags.seed = seed;
  flags.strict = strict;
  flags.format = format == "json" ? cascade::cli::OutputFormat::Json : cascade::cli::OutputFormat::Csv;

  const auto name = app.get_subcommands().front()->get_name();
  const auto result = cascade::cli::run_from_file(name, config, flags, std::cerr);
  if (result.exit_code == cascade::cli::kExitOk || result.exit_code == cascade::cli::kExitVerdict) {
    std::cout << result.out_dir.string() << "/manifest.json\n";
  }
  return result.exit_code;
}
