#pragma once
#include <iosfwd>
#include <string>
#include <vector>

namespace cst {

// Command-line front end. `args` excludes the program name. Writes results to
// `out`, diagnostics to `err`. Exit codes: 0 success (and verify equality),
// 1 verify mismatch, 2 usage or input errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cst
