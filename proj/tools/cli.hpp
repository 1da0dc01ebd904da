#pragma once

// Command-line driver. `run` is the whole program minus process plumbing so
// tests can call it with captured streams.
//
// Exit status: 0 when every requested verdict passes, 1 when a verdict fails,
// 2 on an error (one line `error: <Kind>: <message>` on the error stream).

#include <iosfwd>
#include <string>
#include <vector>

namespace symdyn::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitError = 2;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symdyn::cli
