#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pmine::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitRuntime = 3;

// Entry point behind the `pmine` binary. `args` excludes the program name.
// Exit codes: 0 success, 1 usage error, 2 data/validation error, 3 runtime
// failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pmine::cli
