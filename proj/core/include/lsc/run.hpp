#pragma once

#include <string>

namespace lsc::run {

/// Exit codes shared with the CLI: 0 success, 2 configuration error,
/// 3 solver/runtime failure.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_solver = 3;

enum class OutputFormat { Csv, Json, Both };

struct RunOutcome {
    int exit_code = exit_ok;
    std::string manifest_path;  ///< empty on failure
    std::string message;        ///< one-line summary or error text
};

/// Execute one subcommand: parse and validate the config, run the stage,
/// write artifacts plus a manifest.json into out_dir (atomically).
/// Subcommands: bethe, thermo, central-charge, quench, osee, dis, pipeline.
RunOutcome run_subcommand(const std::string& subcommand, const std::string& config_path,
                          const std::string& out_dir, OutputFormat format = OutputFormat::Both,
                          int threads = 0);

}  // namespace lsc::run
