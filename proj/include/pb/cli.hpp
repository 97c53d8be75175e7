#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pb {

// Full command-line dispatch, callable from tests. Returns the process exit
// code: 0 = pass, 1 = identity/tolerance failure, 2 = usage or precondition
// error.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace pb
