// -*- mode: c++ -*-
#ifndef LEXEVAL_CLI_HPP
#define LEXEVAL_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexeval/error_miner.hpp"
#include "lexeval/passage.hpp"

namespace lexeval {

inline constexpr std::string_view kVersion = "0.1.0";

/// What a run was asked to do; copied into the header of every report it writes.
struct RunManifest {
  RunManifest(std::string command, std::vector<std::string> inputs)
      : command(std::move(command)), inputs(std::move(inputs)) {}

  std::string command;
  std::vector<std::string> inputs;
  std::optional<RelaxationMode> mode;
  std::optional<MiningParams> mining;
  std::string version{kVersion};

  /// `#`-prefixed lines, one field per line.
  std::string header() const;
};

/// Writes to `path.tmp` then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
/// Throws std::runtime_error naming the path if it cannot be read.
std::string read_file(const std::filesystem::path& path);

/// Entry point of the `lexeval` tool. Reports go to files under --out (or to
/// `out` for single-report commands without --out); diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lexeval

#endif
