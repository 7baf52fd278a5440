#ifndef GEOREG_TOOLS_COMMANDS_H_
#define GEOREG_TOOLS_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

namespace georeg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;

// Entry point shared by main() and the tests. `args` excludes the program
// name. Report content goes to `out`, diagnostics to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace georeg::cli

#endif  // GEOREG_TOOLS_COMMANDS_H_
