#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cqed/config.hpp"

namespace cqed {

struct CommandOptions {
  std::string command;
  std::filesystem::path config;  // run.json for replay
  std::optional<std::string> gauge;
  std::optional<std::string> out;
  bool eigvecs = false;
};

const std::vector<std::string>& command_names();

// 2 for configuration and unsupported combinations, 3 for numeric failures, 1 otherwise.
int exit_code_for(ErrorKind kind);

// Output directory precedence: --out, output.directory, $CQED_OUTPUT_DIR, ./cqed_out.
std::string resolve_output_directory(const std::optional<std::string>& flag, const std::string& configured);

// Runs one subcommand and returns the output directory. Throws cqed::Error.
std::filesystem::path execute_command(const CommandOptions& opt, std::ostream& log);

// execute_command with errors reported on err and mapped to an exit code.
int run_command(const CommandOptions& opt, std::ostream& log, std::ostream& err);

}  // namespace cqed
