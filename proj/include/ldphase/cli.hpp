#pragma once

#include <iosfwd>

namespace ldphase::cli {

/// Entry point of the `ldphase` tool. Exit codes: 0 success, 1 failed
/// verification or numerical failure, 2 usage or input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ldphase::cli
