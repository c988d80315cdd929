#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace realform {

/// Runs one CLI invocation. Reports are a single JSON document on out
/// (JSON lines for roundtrip); diagnostics are machine-parseable JSON on err.
/// Exit codes: 0 success, 2 invalid input, 3 precondition not met,
/// 4 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace realform
