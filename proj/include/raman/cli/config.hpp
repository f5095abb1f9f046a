#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "raman/pulse_shaper.hpp"

namespace raman::cli {

enum class Command { shape, simulate, analyze, sweep, oracle };

const char* command_name(Command command);

struct RunConfig {
    Command command = Command::shape;
    std::vector<double> ratios{8.0}; ///< sweep falls back to default_ratios()
    double e_r = 6.5;
    std::size_t steps = 2048;
    std::size_t bins = 128;
    std::string out_prefix = "raman";
    bool emit_svg = false;
    bool zero_coupling = false;
    bool export_matrices = false;
    std::optional<PhysicalParams> physical;

    double ratio() const { return ratios.front(); }
};

/// Thrown by parse_config for --help; carries the rendered usage text.
struct HelpRequested : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses `<command> [flags]` (program name excluded). A `--config <file>`
/// supplies flat `key = value` lines using the long flag names; flags on the
/// command line win over file values. Throws UsageError naming the offending key.
RunConfig parse_config(const std::vector<std::string>& args);

} // namespace raman::cli
