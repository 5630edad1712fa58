#pragma once
// Command-line front end, callable in-process so tests can drive it.
// Exit codes: 0 success, 2 configuration error, 3 validation failure.

#include <string>
#include <vector>

namespace tuav {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitValidationFailure = 3;

// argv-style entry point (argv[0] is the program name).
int run_cli(const std::vector<std::string>& args);

}  // namespace tuav
