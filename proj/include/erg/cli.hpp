#pragma once

#include <iosfwd>

namespace erg {

inline constexpr const char* kSoftwareName = "erg-lab";
inline constexpr const char* kSoftwareVersion = "1.0.0";

/// Exit codes: 0 success, 1 runtime or verification failure, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace erg
