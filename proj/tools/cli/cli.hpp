#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace permlab_cli {

// Runs one command line (program name excluded). Returns the exit status:
// 0 success, 1 invalid input or usage, 2 resource limit, 3 internal error.
int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

// Exit status for a plab_status value.
int exit_code(int status);

}  // namespace permlab_cli
