#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pairdiag::cli {

// Exit codes: 0 success, 1 usage error, 2 data validation error,
// 3 numeric degeneracy.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pairdiag::cli
