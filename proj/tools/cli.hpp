#pragma once

#include <ostream>

namespace shiftsym::cli {

// Exit codes: 0 all checks pass, 1 a check failed, 2 input or parameter error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shiftsym::cli
