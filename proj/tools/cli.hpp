#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rcu::cli {

// Runs the rcu-bounds command line. args excludes the program name.
// Exit codes: 0 success, 2 input error, 3 unsupported channel class,
// 4 numeric or bracket failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rcu::cli
