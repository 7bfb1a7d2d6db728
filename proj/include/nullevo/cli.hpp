#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nullevo::cli {

/// Exit codes: 0 success or pass, 1 check failure, 2 input error, 3 numerical
/// degeneracy. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nullevo::cli
