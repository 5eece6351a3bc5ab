#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinchain::cli {

/// Runs the spinchain command line. `args` excludes the program name.
/// Returns the process exit status: 0 on success, 1 when the requested
/// artifact could not be fully produced, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinchain::cli
