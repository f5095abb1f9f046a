#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "raman/cli/config.hpp"
#include "raman/cli/formats.hpp"

namespace raman::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitNumerical = 3,
    kExitIo = 4,
};

struct CommandResult {
    std::vector<std::string> files; ///< paths written, in order
    Json summary;                   ///< the JSON document, when the command emits one
};

CommandResult run_shape(const RunConfig& cfg);
CommandResult run_simulate(const RunConfig& cfg);
CommandResult run_analyze(const RunConfig& cfg);
CommandResult run_sweep(const RunConfig& cfg);
CommandResult run_oracle(const RunConfig& cfg);

CommandResult dispatch(const RunConfig& cfg);

/// Parse, run, and map failures to exit codes: 2 usage, 3 numerical, 4 I/O.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace raman::cli
