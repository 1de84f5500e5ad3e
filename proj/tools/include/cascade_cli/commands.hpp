#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cascade_cli/config.hpp"

namespace cascade::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumeric = 2;
inline constexpr int kExitVerdict = 3;

enum class OutputFormat { Csv, Json };

struct RunFlags {
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  bool strict = false;
  OutputFormat format = OutputFormat::Csv;
};

struct RunResult {
  int exit_code = kExitOk;
  std::filesystem::path out_dir;
  /// Every file written, manifest included, sorted.
  std::vector<std::string> files;
  std::vector<std::string> warnings;
  std::string error;
};

const std::vector<std::string>& subcommand_names();

/// Runs one subcommand and writes its files plus manifest.json into the
/// output directory. Diagnostics go to `log`.
RunResult run_subcommand(const std::string& name, RunConfig cfg, const RunFlags& flags,
                         std::ostream& log);

/// Parses the config at `config_path` first; parse failures return exit code
/// 1 without touching the file system.
RunResult run_from_file(const std::string& name, const std::filesystem::path& config_path,
                        const RunFlags& flags, std::ostream& log);

}  // namespace cascade::cli
