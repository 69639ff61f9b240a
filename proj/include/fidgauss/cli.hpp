#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fidgauss/types.hpp"

namespace fidgauss::cli {

using nlohmann::json;

// Raised for problems the user can fix in the config file or flags (missing
// keys, bad types, nonexistent paths, invalid sampler settings).  Maps to
// exit code 2; every other Error maps to 3.
struct ConfigError : Error {
    using Error::Error;
};

// Exit codes shared by the binary and the in-process test harness.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

/*
 * Read and parse a JSON config file.  Parse failures and unreadable paths
 * raise ConfigError with the underlying reason.
 */
json load_config(const std::string& path);

/*
 * Apply `key.path=value` overrides on top of a parsed config.  Keys mirror
 * JSON paths with dots ("sampler.k=8"); a leading "--" is accepted and
 * stripped.  Values are parsed as JSON when possible (numbers, booleans,
 * arrays) and fall back to plain strings.  Missing intermediate objects are
 * created.
 */
void apply_overrides(json& cfg, const std::vector<std::string>& overrides);

// Individual commands.  Each throws ConfigError for user-fixable problems
// and other Error subclasses for runtime failures; run_command maps both to
// process exit codes.  cmd_mle reports optimizer non-convergence inside its
// output file rather than through the exit code.
void cmd_simulate(const json& cfg);
void cmd_fit(const json& cfg);
void cmd_mle(const json& cfg);
void cmd_split(const json& cfg);
void cmd_replicate(const json& cfg);

/*
 * Dispatch one subcommand by name with a fully merged config.  Returns the
 * process exit code: 0 on success, 2 on configuration errors, 3 on runtime
 * failures.  Error text goes to stderr.
 */
int run_command(const std::string& name, const json& cfg);

}  // namespace fidgauss::cli
