#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ea2hg {

// Full command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage error, 3 guard violation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ea2hg
