#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hclab::cli {

/// Runs `hclab` with argv-style arguments (args[0] is the program name).
/// Returns 0 on success, 2 on usage errors, 3 on numerical failures and 4 on
/// precondition failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The usage grammar printed on usage errors.
const char* grammar();

}  // namespace hclab::cli
