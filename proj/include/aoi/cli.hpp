#pragma once

// Command-line surface. run_cli is the whole program behind a testable
// entry point. Exit codes: 0 ok, 1 verification failure (compare), 2 bad
// input, 3 simulation non-convergence.

#include <iosfwd>
#include <string>
#include <vector>

namespace aoi {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aoi
