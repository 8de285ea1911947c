#pragma once

#include <iosfwd>

namespace gbv::cli {

// Runs one command line. The result document (or a structured error) goes to
// `out`; the return value is the process exit code:
// 0 success, 2 validation, 3 cap exceeded, 4 invariant violation.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gbv::cli
