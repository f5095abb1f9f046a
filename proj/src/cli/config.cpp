#include "raman/cli/config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "raman/errors.hpp"
#include "raman/matching_optimizer.hpp"
#include "raman/squeeze_analysis.hpp"

namespace raman::cli {

namespace {

constexpr std::size_t kMinSteps = 64;

const std::map<std::string, Command> kCommands{
    {"shape", Command::shape},     {"simulate", Command::simulate}, {"analyze", Command::analyze},
    {"sweep", Command::sweep},     {"oracle", Command::oracle},
};

// Keys accepted in a config file; booleans take true/false.
const std::set<std::string> kValueKeys{"ratio", "ratios", "er",    "steps", "bins",    "out",
                                       "g",     "atoms",  "delta", "t-signal"};
const std::set<std::string> kFlagKeys{"svg", "zero-coupling", "matrices"};

struct RawOptions {
    std::string command;
    std::optional<double> ratio;
    std::vector<double> ratios;
    std::optional<double> e_r;
    std::optional<std::size_t> steps;
    std::optional<std::size_t> bins;
    std::optional<std::string> out;
    std::string config_file;
    bool svg = false;
    bool zero_coupling = false;
    bool matrices = false;
    std::optional<double> g, atoms, delta, t_signal;
};

void build_app(CLI::App& app, RawOptions& raw)
{
    app.description("Cavity-assisted Raman squeezing: control-pulse synthesis, Green's functions, "
                    "squeezing metrics and cavity matching sweeps.");
    app.add_option("command", raw.command, "shape | simulate | analyze | sweep | oracle")->required();
    app.add_option("--ratio", raw.ratio, "signal duration over cavity lifetime, T/t_c (default 8)");
    app.add_option("--ratios", raw.ratios, "comma-separated increasing list of T/t_c values")->delimiter(',');
    app.add_option("--er", raw.e_r, "target stretch factor e^r > 1 (default 6.5)");
    app.add_option("--steps", raw.steps, "RK4 steps across the signal, >= 64 (default 2048)");
    app.add_option("--bins", raw.bins, "field bins for the oracle, <= 512 (default 128)");
    app.add_option("--out", raw.out, "output path prefix (default 'raman')");
    app.add_option("--config", raw.config_file, "flat key = value file mirroring the long flags");
    app.add_flag("--svg", raw.svg, "also write SVG plots");
    app.add_flag("--zero-coupling", raw.zero_coupling, "use k = 0 instead of a shaped coupling");
    app.add_flag("--matrices", raw.matrices, "oracle: export the A and B matrices as CSV");
    app.add_option("--g", raw.g, "physical block: single-atom coupling g, rad/s");
    app.add_option("--atoms", raw.atoms, "physical block: atom number N");
    app.add_option("--delta", raw.delta, "physical block: Raman mismatch Delta, rad/s");
    app.add_option("--t-signal", raw.t_signal, "physical block: signal duration T, s");
}

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!kValueKeys.contains(key) && !kFlagKeys.contains(key))
            throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        entries.emplace_back(std::move(key), std::move(value));
    }
    return entries;
}

bool parse_bool(const std::string& key, const std::string& value)
{
    if (value == "true" || value == "1" || value == "yes")
        return true;
    if (value == "false" || value == "0" || value == "no")
        return false;
    throw UsageError("config key '" + key + "' expects true or false, got '" + value + "'");
}

void parse_into(CLI::App& app, const std::vector<std::string>& args)
{
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
}

void require(bool ok, const std::string& message)
{
    if (!ok)
        throw UsageError(message);
}

} // namespace

const char* command_name(Command command)
{
    switch (command) {
    case Command::shape: return "shape";
    case Command::simulate: return "simulate";
    case Command::analyze: return "analyze";
    case Command::sweep: return "sweep";
    case Command::oracle: return "oracle";
    }
    return "?";
}

RunConfig parse_config(const std::vector<std::string>& args)
{
    RawOptions raw;
    CLI::App app{"ramansq"};
    build_app(app, raw);
    parse_into(app, args);

    if (!raw.config_file.empty()) {
        std::vector<std::string> merged = args;
        for (const auto& [key, value] : read_config_file(raw.config_file)) {
            if (app.get_option("--" + key)->count() > 0)
                continue;
            if (kFlagKeys.contains(key)) {
                if (parse_bool(key, value))
                    merged.push_back("--" + key);
            } else {
                merged.push_back("--" + key);
                merged.push_back(value);
            }
        }
        raw = RawOptions{};
        CLI::App again{"ramansq"};
        build_app(again, raw);
        parse_into(again, merged);
    }

    RunConfig cfg;
    const auto cmd = kCommands.find(raw.command);
    require(cmd != kCommands.end(), "command: unknown command '" + raw.command + "'");
    cfg.command = cmd->second;

    require(!(raw.ratio && !raw.ratios.empty()), "ratio: --ratio and --ratios are mutually exclusive");
    if (raw.ratio)
        cfg.ratios = {*raw.ratio};
    else if (!raw.ratios.empty())
        cfg.ratios = raw.ratios;
    else if (cfg.command == Command::sweep)
        cfg.ratios = default_ratios();
    for (double r : cfg.ratios)
        require(r > 0.0 && std::isfinite(r), "ratio: T/t_c must be positive, got " + std::to_string(r));
    for (std::size_t i = 1; i < cfg.ratios.size(); ++i)
        require(cfg.ratios[i] > cfg.ratios[i - 1], "ratios: values must be strictly increasing");

    cfg.zero_coupling = raw.zero_coupling;
    require(!(cfg.zero_coupling && raw.e_r), "er: --er conflicts with --zero-coupling");
    if (raw.e_r)
        cfg.e_r = *raw.e_r;
    require(cfg.e_r > ShapingTarget::kMinStretch && std::isfinite(cfg.e_r),
            "er: stretch factor e^r must exceed 1, got " + std::to_string(cfg.e_r));

    if (raw.steps)
        cfg.steps = *raw.steps;
    require(cfg.steps >= kMinSteps, "steps: need at least " + std::to_string(kMinSteps) + ", got "
                                        + std::to_string(cfg.steps));
    if (raw.bins)
        cfg.bins = *raw.bins;
    require(cfg.bins >= 1 && cfg.bins <= DiscreteBogolyubov::kMaxBins,
            "bins: must lie in [1, " + std::to_string(DiscreteBogolyubov::kMaxBins) + "], got "
                + std::to_string(cfg.bins));
    if (raw.out)
        cfg.out_prefix = *raw.out;
    require(!cfg.out_prefix.empty(), "out: prefix must not be empty");
    cfg.emit_svg = raw.svg;
    cfg.export_matrices = raw.matrices;

    switch (cfg.command) {
    case Command::simulate:
    case Command::analyze:
    case Command::oracle:
        require(cfg.ratios.size() == 1, "ratios: command '" + raw.command + "' takes a single --ratio");
        break;
    case Command::sweep:
        require(cfg.ratios.size() >= 3, "ratios: sweep needs at least three ratios to locate an optimum");
        break;
    case Command::shape:
        break;
    }
    if (cfg.command == Command::oracle)
        require(cfg.steps % cfg.bins == 0, "bins: steps (" + std::to_string(cfg.steps)
                                               + ") must be a multiple of bins (" + std::to_string(cfg.bins) + ")");
    require(!cfg.zero_coupling || cfg.command == Command::oracle || cfg.command == Command::simulate,
            "zero-coupling: only meaningful for oracle and simulate");

    const int physical_given = raw.g.has_value() + raw.atoms.has_value() + raw.delta.has_value()
                               + raw.t_signal.has_value();
    if (physical_given > 0) {
        require(physical_given == 4, "g: the physical block needs all of --g, --atoms, --delta, --t-signal");
        require(cfg.command == Command::shape, "g: physical units are only emitted by 'shape'");
        PhysicalParams p;
        p.g = *raw.g;
        p.n_atoms = *raw.atoms;
        p.delta = *raw.delta;
        p.t_signal = *raw.t_signal;
        // kappa follows from T/t_c = 2 kappa T; fixed per ratio at output time
        p.kappa = cfg.ratio() / (2.0 * p.t_signal);
        p.validate();
        cfg.physical = p;
    }
    return cfg;
}

} // namespace raman::cli
