#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace antinspect::app {

struct GlobalOptions {
  std::filesystem::path config;
  std::filesystem::path out_dir = "out";
  std::optional<std::uint64_t> seed;
  int verbosity = 0;
};

// Each command reads its config, computes everything in memory and only then
// writes its outputs, so a failed run leaves no partial files. Errors
// propagate as exceptions; run_cli maps them to exit codes.
void cmd_track(const GlobalOptions& opts, const std::optional<std::string>& mode, std::ostream& log);
void cmd_compare(const GlobalOptions& opts, const std::vector<std::string>& modes,
                 std::ostream& log);
void cmd_plan(const GlobalOptions& opts, std::optional<int> iterations, std::ostream& log);
void cmd_cost(const GlobalOptions& opts, std::ostream& log);
void cmd_generate(const GlobalOptions& opts, std::ostream& log);

/// Exit status: 0 success, 1 usage or configuration error, 2 runtime error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace antinspect::app
