#pragma once

// CSV and JSON emitters. Numbers are written with 15 significant digits,
// '.' as decimal separator and no locale dependence, so identical inputs
// give byte-identical files.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "raman/cli/config.hpp"
#include "raman/dynamics.hpp"
#include "raman/matching_optimizer.hpp"
#include "raman/pulse_shaper.hpp"
#include "raman/squeeze_analysis.hpp"

namespace raman::cli {

using Json = nlohmann::ordered_json;

std::string format_number(double value);
/// Value rounded to 15 significant digits, as stored in every report.
double round15(double value);

/// Comma separated, one header row, LF line endings. The first line is a
/// '#' comment carrying schema and artifact versions.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> columns);

    void add_row(const std::vector<std::optional<double>>& cells);
    std::string str() const;

private:
    std::vector<std::string> columns_;
    std::string body_;
};

std::string pulse_csv(const CouplingProfile& coupling, const SignalMode& mode, const SpinMagnitude& spin,
                      const std::optional<RabiProfile>& rabi);
std::string trajectory_csv(const Trajectory& traj);
std::string greens_csv(const GreenSet& greens);
std::string squeezing_csv(const TimeGrid& grid, const std::vector<double>& r_of_tau);
std::string sweep_csv(const SweepTable& table);
std::string matrix_csv(const Eigen::MatrixXd& matrix);

/// Everything analyze writes: flat report keys plus config echo and provenance.
struct ReportDocument {
    int schema_version = 0;
    std::string artifact_version;
    Json config;
    SqueezeReport report;
    std::optional<double> t_switch_over_T;
    double residual = 0.0;
    double n_steps = 0.0;
    double duration = 0.0;
    Json tolerances;
};

Json config_json(const RunConfig& cfg);
Json to_json(const ReportDocument& doc);
ReportDocument report_from_json(const Json& json);

Json sweep_json(const SweepTable& table);

/// Pretty JSON, two-space indent, trailing newline.
std::string dump(const Json& json);

void write_text_file(const std::string& path, const std::string& content);

} // namespace raman::cli
