#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace protfeat::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,     // bad flags or out-of-range configuration
  kInput = 2,     // unreadable / unparsable input
  kCapacity = 3,  // simplex cap exceeded
  kPartial = 4,   // some inputs failed, results written for the rest
};

// Exit code for an exception escaping a command.
int exit_code_for(const std::exception &e);

// PQR files named by `path`: the file itself, or every *.pqr in a directory
// sorted by name.
std::vector<std::filesystem::path> collect_pqr_inputs(const std::filesystem::path &path);

// Entry point shared by the executable and the tests.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace protfeat::cli
