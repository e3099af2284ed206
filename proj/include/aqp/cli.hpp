#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace aqp {

struct RunOptions {
  std::filesystem::path config;
  std::string root_id = "root";
  std::filesystem::path out_dir = ".";
};

/// Load, resolve, build, traverse; writes a run_manifest.json into the
/// output directory whether the run succeeds or fails. Returns the
/// process exit code: 0 success, 2 configuration/graph error, 3 runtime
/// node failure.
int cmd_run(const RunOptions& options);

struct VizOptions {
  std::filesystem::path config;
  std::string root_id = "root";
  std::filesystem::path out;  // empty: <config stem>.dot
  bool expand = false;
};

/// Builds the graph without executing and writes DOT. Exit 0 or 2.
int cmd_viz(const VizOptions& options);

/// Full static validation; prints every finding. Exit 0 when clean,
/// 1 when there are findings.
int cmd_validate(const std::filesystem::path& config,
                 const std::string& root_id = "root");

/// Synthesizes the evaluation corpus. Exit 0 or 3.
int cmd_gen_dataset(const std::filesystem::path& dir, std::uint64_t seed);

}  // namespace aqp
