#pragma once

#include <iosfwd>

namespace qlctx::cli {

/// Exit codes of the qlctx tool.
enum ExitCode : int {
    kOk = 0,
    kInputError = 2,       ///< I/O, schema or argument error
    kInternalError = 3,    ///< an internal invariant failed; always a bug
};

/// Runs the tool with the given arguments (argv[0] is the program name).
/// Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qlctx::cli
