#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sturm {

// Full command dispatcher; returns the process exit code.
// 0: success / verification passed
// 1: verification failed (a witness is in the report)
// 2: parse failure or guard violation
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace sturm
