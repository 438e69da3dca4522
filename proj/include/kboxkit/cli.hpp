#ifndef KBOXKIT_CLI_HPP
#define KBOXKIT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace kboxkit::cli {

enum ExitCode : int {
  kSatisfied = 0,
  kViolated = 1,
  kPrecondition = 2,
  kInternal = 3,
};

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `--out` when given and to `out` otherwise; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kboxkit::cli

#endif  // KBOXKIT_CLI_HPP
