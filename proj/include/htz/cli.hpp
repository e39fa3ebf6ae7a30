#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace htz {

// Runs one `htz` invocation. args excludes the program name.
// Returns 0 on success, 1 on a domain error or failed suite, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace htz
