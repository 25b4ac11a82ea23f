// Command-line front end. Exit codes: 0 success, 1 internal failure, 2 malformed
// input, 3 invalid input or arguments.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sbn {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;

// `args` excludes the program name.
int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace sbn
