#pragma once

#include <ostream>

namespace locc {

// Exit codes: 0 protocol found (or valid input for "validate"), 1 input error,
// 2 no LOCC protocol, 3 search capped.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace locc
