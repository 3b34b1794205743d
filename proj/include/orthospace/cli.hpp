#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orthospace::cli {

/// Runs one command line (without the program name). Exit codes: 0 verified
/// success, 1 check failure (JSON report on `out`), 2 usage or input error
/// (message on `err`).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orthospace::cli
