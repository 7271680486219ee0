#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace umimo::cli {

enum ExitCode : int {
  kOk = 0,
  kRunFailed = 1,
  kConfigNotFound = 2,
  kConfigInvalid = 3,
};

/// Entry point shared by the executable and the tests. `args[0]` is the
/// program name, as in argv.
int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);

} // namespace umimo::cli
