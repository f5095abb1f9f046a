#include "raman/cli/formats.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "raman/errors.hpp"
#include "raman/version.hpp"

namespace raman::cli {

namespace {

std::string version_comment()
{
    return "# schema_version=" + std::to_string(kSchemaVersion) + " artifact_version=" + kArtifactVersion + "\n";
}

double number_or_nan(const Json& j)
{
    return j.is_number() ? j.get<double>() : std::nan("");
}

Json number(double v)
{
    if (!std::isfinite(v))
        return nullptr;
    return round15(v);
}

} // namespace

std::string format_number(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    if (value == 0.0)
        return "0";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 15);
    return std::string(buf.data(), res.ptr);
}

double round15(double value)
{
    if (!std::isfinite(value) || value == 0.0)
        return value;
    const std::string text = format_number(value);
    double out = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), out);
    return out;
}

CsvWriter::CsvWriter(std::vector<std::string> columns)
    : columns_(std::move(columns))
{
}

void CsvWriter::add_row(const std::vector<std::optional<double>>& cells)
{
    if (cells.size() != columns_.size())
        throw std::invalid_argument("csv row has " + std::to_string(cells.size()) + " cells, expected "
                                    + std::to_string(columns_.size()));
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0)
            body_ += ',';
        if (cells[i])
            body_ += format_number(*cells[i]);
    }
    body_ += '\n';
}

std::string CsvWriter::str() const
{
    std::string header = version_comment();
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i > 0)
            header += ',';
        header += columns_[i];
    }
    header += '\n';
    return header + body_;
}

std::string pulse_csv(const CouplingProfile& coupling, const SignalMode& mode, const SpinMagnitude& spin,
                      const std::optional<RabiProfile>& rabi)
{
    std::vector<std::string> cols{"t_over_T", "k_tilde", "q", "e0", "s_abs"};
    if (rabi)
        cols.push_back("omega_rad_per_s");
    CsvWriter csv(cols);
    const TimeGrid& grid = coupling.grid();
    for (std::size_t i = 0; i < grid.n_points(); ++i) {
        std::vector<std::optional<double>> row{grid.fraction(i), coupling.k_tilde()[i], coupling.q()[i],
                                               mode.e0[i], spin.s_abs[i]};
        if (rabi)
            row.push_back(rabi->omega[i]);
        csv.add_row(row);
    }
    return csv.str();
}

std::string trajectory_csv(const Trajectory& traj)
{
    CsvWriter csv({"t_over_T", "tau", "e_field", "s_dag"});
    for (std::size_t i = 0; i < traj.grid.n_points(); ++i)
        csv.add_row({traj.grid.fraction(i), traj.grid.tau(i), traj.e_field[i], traj.s_dag[i]});
    return csv.str();
}

std::string greens_csv(const GreenSet& greens)
{
    CsvWriter csv({"t_over_T", "tau", "g_es", "g_ss", "g_se_row", "g_ee_row"});
    for (std::size_t i = 0; i < greens.grid.n_points(); ++i)
        csv.add_row({greens.grid.fraction(i), greens.grid.tau(i), greens.g_es[i], greens.g_ss[i],
                     greens.g_se_row[i], greens.g_ee_row[i]});
    return csv.str();
}

std::string squeezing_csv(const TimeGrid& grid, const std::vector<double>& r_of_tau)
{
    CsvWriter csv({"t_over_T", "r_of_tau", "exp_r_of_tau"});
    for (std::size_t i = 0; i < grid.n_points(); ++i)
        csv.add_row({grid.fraction(i), r_of_tau[i], std::exp(r_of_tau[i])});
    return csv.str();
}

std::string sweep_csv(const SweepTable& table)
{
    CsvWriter csv({"ratio", "e_r", "n0", "peak_q", "l2_q", "t_switch_over_T", "duan", "residual"});
    for (const SweepRecord& rec : table.records)
        csv.add_row({rec.ratio, rec.e_r, rec.n0, rec.peak_q, rec.l2_q, rec.t_switch_over_T, rec.duan, rec.residual});
    return csv.str();
}

std::string matrix_csv(const Eigen::MatrixXd& matrix)
{
    std::vector<std::string> cols;
    for (Eigen::Index c = 0; c < matrix.cols(); ++c)
        cols.push_back("c" + std::to_string(c));
    CsvWriter csv(cols);
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
        std::vector<std::optional<double>> row;
        for (Eigen::Index c = 0; c < matrix.cols(); ++c)
            row.emplace_back(matrix(r, c));
        csv.add_row(row);
    }
    return csv.str();
}

Json config_json(const RunConfig& cfg)
{
    Json j;
    j["command"] = command_name(cfg.command);
    Json ratios = Json::array();
    for (double r : cfg.ratios)
        ratios.push_back(number(r));
    j["ratios"] = ratios;
    j["e_r"] = cfg.zero_coupling ? Json(nullptr) : number(cfg.e_r);
    j["steps"] = cfg.steps;
    j["bins"] = cfg.bins;
    j["out"] = cfg.out_prefix;
    j["svg"] = cfg.emit_svg;
    j["zero_coupling"] = cfg.zero_coupling;
    if (cfg.physical) {
        j["g"] = number(cfg.physical->g);
        j["atoms"] = number(cfg.physical->n_atoms);
        j["delta"] = number(cfg.physical->delta);
        j["t_signal"] = number(cfg.physical->t_signal);
    }
    return j;
}

Json to_json(const ReportDocument& doc)
{
    Json j;
    j["schema_version"] = doc.schema_version;
    j["artifact_version"] = doc.artifact_version;
    const SqueezeReport& r = doc.report;
    j["r"] = number(r.r);
    j["e_r"] = number(r.e_r_plus);
    j["e_minus_r"] = number(r.e_r_minus);
    j["n0"] = number(r.n0);
    j["eta"] = number(r.eta);
    j["duan"] = number(r.duan);
    j["g_ss_final"] = number(r.g_ss_final);
    j["n1"] = number(r.n1);
    j["n2"] = number(r.n2);
    j["xi_g"] = number(r.xi_g);
    j["t_switch_over_T"] = doc.t_switch_over_T ? number(*doc.t_switch_over_T) : Json(nullptr);
    j["residual"] = number(doc.residual);
    j["config"] = doc.config;
    Json prov;
    prov["n_steps"] = number(doc.n_steps);
    prov["duration"] = number(doc.duration);
    prov["tolerances"] = doc.tolerances;
    j["provenance"] = prov;
    return j;
}

ReportDocument report_from_json(const Json& j)
{
    ReportDocument doc;
    doc.schema_version = j.at("schema_version").get<int>();
    doc.artifact_version = j.at("artifact_version").get<std::string>();
    SqueezeReport& r = doc.report;
    r.r = number_or_nan(j.at("r"));
    r.e_r_plus = number_or_nan(j.at("e_r"));
    r.e_r_minus = number_or_nan(j.at("e_minus_r"));
    r.n0 = number_or_nan(j.at("n0"));
    r.eta = number_or_nan(j.at("eta"));
    r.duan = number_or_nan(j.at("duan"));
    r.g_ss_final = number_or_nan(j.at("g_ss_final"));
    r.n1 = number_or_nan(j.at("n1"));
    r.n2 = number_or_nan(j.at("n2"));
    r.xi_g = number_or_nan(j.at("xi_g"));
    if (j.at("t_switch_over_T").is_number())
        doc.t_switch_over_T = j.at("t_switch_over_T").get<double>();
    doc.residual = number_or_nan(j.at("residual"));
    doc.config = j.at("config");
    const Json& prov = j.at("provenance");
    doc.n_steps = number_or_nan(prov.at("n_steps"));
    doc.duration = number_or_nan(prov.at("duration"));
    doc.tolerances = prov.at("tolerances");
    return doc;
}

Json sweep_json(const SweepTable& table)
{
    Json arr = Json::array();
    for (const SweepRecord& rec : table.records) {
        Json j;
        j["ratio"] = number(rec.ratio);
        j["e_r"] = number(rec.e_r);
        j["n0"] = number(rec.n0);
        j["peak_q"] = number(rec.peak_q);
        j["l2_q"] = number(rec.l2_q);
        j["t_switch_over_T"] = rec.t_switch_over_T ? number(*rec.t_switch_over_T) : Json(nullptr);
        j["reversed_fraction"] = number(rec.reversed_fraction);
        j["duan"] = number(rec.duan);
        j["eta"] = number(rec.eta);
        j["residual"] = number(rec.residual);
        arr.push_back(j);
    }
    return arr;
}

std::string dump(const Json& json)
{
    return json.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out)
        throw IoError("write to '" + path + "' failed");
}

} // namespace raman::cli
