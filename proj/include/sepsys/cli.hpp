#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace sepsys::cli {

// Full command-line driver, factored for in-process testing. Returns the
// process exit code: 0 success / property passed, 1 a property check failed
// (witness emitted), 2 invalid input or usage.
int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace sepsys::cli
