#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace swarmform::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUnsuccessfulTrial = 2;

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swarmform::cli
