#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace sarg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs one CLI invocation; args excludes the program name. Environment
/// overrides are taken from `env` so runs are reproducible in tests.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const std::map<std::string, std::string>& env);

/// As above with the process environment.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sarg
