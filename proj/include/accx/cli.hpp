#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace accx::cli {

/// Exit codes: 0 success, 1 verification failed, 2 usage or runtime error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitError = 2;

/// Runs the accx command line. args excludes the program name.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace accx::cli
