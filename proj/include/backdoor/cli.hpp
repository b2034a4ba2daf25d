#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace backdoor::cli {

/// Runs one command line (without the program name). Exit codes: 0 when the
/// criterion holds or a set was found, 1 when it fails or no set exists, 2 on
/// usage or input errors (reported as one line on `err`).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace backdoor::cli
