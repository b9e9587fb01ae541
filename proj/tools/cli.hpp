// Command-line front end. Kept as a library so tests can drive it in-process.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace froblang::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kUsageError = 2,  // unparseable input or a domain violation
    kInconclusive = 3,
    kInternalError = 4,  // overflow, stabilization cap
};

/// argv without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace froblang::cli
