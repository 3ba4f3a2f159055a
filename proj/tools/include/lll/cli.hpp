#pragma once

#include <ostream>

namespace lll {

/// Exit codes: 0 success or applicable, 1 honest negative (not applicable,
/// budget exhausted, violations found), 2 usage or input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lll
