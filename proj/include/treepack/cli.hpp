#pragma once

#include <iosfwd>

namespace treepack {

// Runs the command line tool. Exit codes: 0 success, 1 a construction or
// verification failed, 2 bad usage or unreadable input.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace treepack
