// Command-line entry point. `args` excludes the program name.
// Exit codes: 0 success or positive verdict, 2 Unknown / negative verdict /
// sweep mismatch, 1 usage or data error.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qaslopes {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qaslopes
