#ifndef WEAKLABEL_CLI_H_
#define WEAKLABEL_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace weaklabel {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitMatrix = 3,
  kExitTraining = 4,
  kExitSchema = 5,
};

// Runs the command line `args` (without the program name). Everything the
// process would print goes to `out` / `err`.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace weaklabel

#endif  // WEAKLABEL_CLI_H_
