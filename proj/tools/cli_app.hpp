// Batch CLI entry point, callable in-process (the test suites drive the
// subcommands through run()). Exit codes: 0 success, 2 config/validation
// error, 3 data error, 4 internal invariant violation.

#pragma once

#include <string>
#include <vector>

namespace relex::cli {

int run(const std::vector<std::string>& args);

// Default mode declarations for a target relation: the standard structural /
// lexical / syntactic / chunking / semantic body modes over the emitted BK
// predicates plus the two discretization predicates.
std::string default_modes_text(const std::string& relation);

}  // namespace relex::cli
