#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mcda {

inline constexpr const char* kToolVersion = "0.1.0";

// args excludes the program name. Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mcda
