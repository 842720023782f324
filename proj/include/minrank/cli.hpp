#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace minrank::cli {

/// Command-line front end. Returns the process exit code:
///   0  success
///   2  input error (files, flags, formats, dimensions)
///   3  pruned search exhausted all branches (after one automatic retry)
///   4  oracle enumeration budget refused
///   5  code failed verification
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minrank::cli
