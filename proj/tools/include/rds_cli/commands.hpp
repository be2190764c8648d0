#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rds::cli {

enum ExitCode : int { kOk = 0, kDomainFailure = 1, kInputError = 2 };

/// Runs the rds command line; argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rds::cli
