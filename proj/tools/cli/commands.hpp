#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace astute::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

/// Entry point. Exit 0 on success, 2 on a configuration error (the message
/// names the key), 1 on any other failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

/// Convenience for tests: args exclude the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace astute::cli
