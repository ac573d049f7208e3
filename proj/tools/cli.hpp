#ifndef CRATERRIM_TOOLS_CLI_HPP
#define CRATERRIM_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace craterrim::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;

/// Entry point shared by main() and the tests. args[0] is the program name.
/// Data goes to `out` unless a command writes files; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace craterrim::cli

#endif  // CRATERRIM_TOOLS_CLI_HPP
