#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hqec {

// Runs one command-line invocation. `args` excludes the program name.
// Human-readable summaries go to `out`, diagnostics to `err`;
// artifacts go to the paths given by --out/--svg/--csv. Returns 0 on
// success, 1 when a verification fails, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hqec
