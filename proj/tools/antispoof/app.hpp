#pragma once

#include <iosfwd>

namespace codedlf::cli {

// Parses the command line and runs one subcommand. Returns the process exit
// code: 0 success, 1 usage error, 2 data error, 3 internal error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace codedlf::cli
