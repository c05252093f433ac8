#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sparsity::cli {

enum ExitCode : int {
  kOk = 0,
  kDomainError = 1,
  kFormatError = 2,
  kCapExceeded = 3,
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CommandInfo {
  std::string path;  // e.g. "tree density"
  std::vector<std::string> flags;
  std::string help;
};

/// Every leaf subcommand with its long flags and rendered help text.
std::vector<CommandInfo> inventory();

}  // namespace sparsity::cli
