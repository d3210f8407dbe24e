#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bifbm/error.hpp"

namespace bifbm::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kUsageError = 2 };

class UsageError : public Error {
public:
    using Error::Error;
};

/// A parsed invocation: the subcommand path (e.g. {"analyze", "lamperti"}) and
/// the options given explicitly, by long name without dashes. Defaults are
/// applied at dispatch time and listed in the help text.
struct RunConfig {
    std::vector<std::string> commands;
    std::map<std::string, std::string> options;

    /// `commands... --name=value...` with options in sorted order.
    [[nodiscard]] std::vector<std::string> canonical_args() const;
    [[nodiscard]] std::string canonical_string() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws UsageError (message includes the usage text) on unknown
/// subcommands or flags.
[[nodiscard]] RunConfig parse_run_config(std::span<const std::string> args);

/// Runs one invocation. Reports go to `out` (or to --out), diagnostics to `err`.
/// Returns 0 on success, 1 when a requested check fails, 2 on usage or parameter errors.
int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace bifbm::cli
