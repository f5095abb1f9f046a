#include "raman/cli/commands.hpp"

#include <cmath>
#include <optional>

#include "raman/cli/svg.hpp"
#include "raman/errors.hpp"
#include "raman/matching_optimizer.hpp"
#include "raman/version.hpp"

namespace raman::cli {

namespace {

constexpr double kResidualTolerance = 1e-6;
constexpr double kNormTolerance = 1e-6;
constexpr double kSymplecticTolerance = 1e-3;

Json tolerances_json()
{
    Json t;
    t["retrieval_residual"] = kResidualTolerance;
    t["norm_identity_relative"] = kNormTolerance;
    t["symplectic_residual"] = kSymplecticTolerance;
    return t;
}

Json document_header(const RunConfig& cfg)
{
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["artifact_version"] = kArtifactVersion;
    j["config"] = config_json(cfg);
    return j;
}

struct Shaped {
    TimeGrid grid;
    SignalMode mode;
    ShapingTarget target;
    SpinMagnitude spin;
    CouplingProfile coupling;
};

Shaped shape_for(double ratio, const RunConfig& cfg)
{
    const TimeGrid grid(cfg.steps, ratio);
    SignalMode mode = make_signal_mode(grid);
    const ShapingTarget target = ShapingTarget::from_stretch(cfg.e_r);
    SpinMagnitude spin = spin_magnitude(target, mode);
    CouplingProfile coupling = synthesize_coupling(target, mode);
    return {grid, std::move(mode), target, std::move(spin), std::move(coupling)};
}

CouplingProfile coupling_for(const RunConfig& cfg)
{
    if (cfg.zero_coupling)
        return CouplingProfile::zero(TimeGrid(cfg.steps, cfg.ratio()));
    return shape_for(cfg.ratio(), cfg).coupling;
}

std::string ratio_tag(double ratio)
{
    return "ratio_" + format_number(ratio);
}

void emit(CommandResult& result, const std::string& path, const std::string& content)
{
    write_text_file(path, content);
    result.files.push_back(path);
}

std::vector<double> fractions(const TimeGrid& grid)
{
    std::vector<double> x(grid.n_points());
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = grid.fraction(i);
    return x;
}

} // namespace

CommandResult run_shape(const RunConfig& cfg)
{
    CommandResult result;
    std::vector<PlotSeries> curves;
    const bool several = cfg.ratios.size() > 1;
    for (double ratio : cfg.ratios) {
        const Shaped s = shape_for(ratio, cfg);
        std::optional<RabiProfile> rabi;
        if (cfg.physical) {
            PhysicalParams p = *cfg.physical;
            p.kappa = ratio / (2.0 * p.t_signal);
            rabi = rabi_profile(s.coupling, p);
        }
        const std::string path = cfg.out_prefix + (several ? "_" + ratio_tag(ratio) : std::string()) + "_pulse.csv";
        emit(result, path, pulse_csv(s.coupling, s.mode, s.spin, rabi));
        const auto q = s.coupling.q();
        curves.push_back({"T/t_c = " + format_number(ratio), fractions(s.grid), std::vector<double>(q.begin(), q.end())});
    }
    if (cfg.emit_svg) {
        PlotSpec spec{"Control coupling q(t/T), e^r = " + format_number(cfg.e_r), "t/T", "q", false, true};
        emit(result, cfg.out_prefix + "_pulse.svg", render_svg(spec, curves));
    }
    return result;
}

CommandResult run_simulate(const RunConfig& cfg)
{
    CommandResult result;
    const CouplingProfile coupling = coupling_for(cfg);
    const GreenSet greens = compute_greens(coupling);
    const Trajectory traj{coupling.grid(), greens.g_es, greens.g_ss};
    emit(result, cfg.out_prefix + "_trajectory.csv", trajectory_csv(traj));
    emit(result, cfg.out_prefix + "_greens.csv", greens_csv(greens));
    if (cfg.emit_svg) {
        const auto x = fractions(coupling.grid());
        PlotSpec spec{"Green's functions, T/t_c = " + format_number(cfg.ratio()), "t/T", "G", false, true};
        emit(result, cfg.out_prefix + "_greens.svg",
             render_svg(spec, {{"G_ES(tau,0)", x, greens.g_es},
                               {"G_SS(tau,0)", x, greens.g_ss},
                               {"G_SE(T,tau)", x, greens.g_se_row},
                               {"G_EE(T,tau)", x, greens.g_ee_row}}));
    }
    return result;
}

CommandResult run_analyze(const RunConfig& cfg)
{
    CommandResult result;
    const Shaped s = shape_for(cfg.ratio(), cfg);
    const GreenSet greens = compute_greens(s.coupling);

    ReportDocument doc;
    doc.schema_version = kSchemaVersion;
    doc.artifact_version = kArtifactVersion;
    doc.config = config_json(cfg);
    doc.report = analyze(greens);
    doc.t_switch_over_T = sign_switch_time(s.coupling);
    doc.residual = verify_retrieval(s.coupling, s.mode, s.target);
    doc.n_steps = static_cast<double>(s.grid.n_steps());
    doc.duration = s.grid.duration();
    doc.tolerances = tolerances_json();

    result.summary = to_json(doc);
    emit(result, cfg.out_prefix + "_report.json", dump(result.summary));

    const std::vector<double> r_of_tau = squeezing_history(greens);
    emit(result, cfg.out_prefix + "_squeezing.csv", squeezing_csv(s.grid, r_of_tau));
    if (cfg.emit_svg) {
        std::vector<double> exp_r(r_of_tau.size());
        for (std::size_t i = 0; i < exp_r.size(); ++i)
            exp_r[i] = std::exp(r_of_tau[i]);
        PlotSpec spec{"Squeezing history, T/t_c = " + format_number(cfg.ratio()), "t/T", "exp r(tau)", false, false};
        emit(result, cfg.out_prefix + "_squeezing.svg", render_svg(spec, {{"exp r(tau)", fractions(s.grid), exp_r}}));
    }
    return result;
}

CommandResult run_sweep(const RunConfig& cfg)
{
    CommandResult result;
    const ShapingTarget target = ShapingTarget::from_stretch(cfg.e_r);
    const SweepTable table = sweep(cfg.ratios, target, cfg.steps);
    const OptimalRatio opt = optimal_ratio(table);

    emit(result, cfg.out_prefix + "_sweep.csv", sweep_csv(table));

    Json j = document_header(cfg);
    j["optimal_ratio"] = round15(opt.ratio);
    j["optimal_peak_q"] = round15(opt.peak_q);
    j["refined_ratio"] = round15(opt.refined_ratio);
    j["refined_peak_q"] = round15(opt.refined_peak_q);
    j["at_boundary"] = opt.at_boundary;
    j["records"] = sweep_json(table);
    Json prov;
    prov["n_steps"] = cfg.steps;
    prov["tolerances"] = tolerances_json();
    j["provenance"] = prov;
    result.summary = j;
    emit(result, cfg.out_prefix + "_sweep.json", dump(j));

    if (cfg.emit_svg) {
        PlotSeries peak{"peak |q|", {}, {}};
        PlotSeries l2{"L2 norm of q", {}, {}};
        for (const SweepRecord& rec : table.records) {
            peak.x.push_back(rec.ratio);
            peak.y.push_back(rec.peak_q);
            l2.x.push_back(rec.ratio);
            l2.y.push_back(rec.l2_q);
        }
        PlotSpec spec{"Control strength vs T/t_c, e^r = " + format_number(cfg.e_r), "T/t_c", "q", true, false};
        emit(result, cfg.out_prefix + "_sweep.svg", render_svg(spec, {peak, l2}));
    }
    return result;
}

CommandResult run_oracle(const RunConfig& cfg)
{
    CommandResult result;
    const CouplingProfile coupling = coupling_for(cfg);
    const GreenSet greens = compute_greens(coupling);
    const DiscreteBogolyubov db = discrete_bogolyubov(coupling, cfg.bins);
    const SymplecticResiduals res = symplectic_residuals(db);
    const std::vector<double> sv = singular_values(db.b_mat);
    const double expected = std::sqrt(std::max(greens.g_ss_final() * greens.g_ss_final() - 1.0, 0.0));

    Json j = document_header(cfg);
    j["bins"] = cfg.bins;
    j["norm_residual"] = round15(res.norm_preservation);
    j["symmetry_residual"] = round15(res.symmetry);
    j["b_singular_1"] = round15(sv.size() > 0 ? sv[0] : 0.0);
    j["b_singular_2"] = round15(sv.size() > 1 ? sv[1] : 0.0);
    j["b_singular_rest_max"] = round15(sv.size() > 2 ? sv[2] : 0.0);
    j["expected_b_diag"] = round15(expected);
    j["g_ss_final"] = round15(greens.g_ss_final());

    const std::size_t refined_bins = 2 * cfg.bins;
    if (refined_bins <= DiscreteBogolyubov::kMaxBins && cfg.steps % refined_bins == 0) {
        const SymplecticResiduals fine = symplectic_residuals(discrete_bogolyubov(coupling, refined_bins));
        j["refined_bins"] = refined_bins;
        j["refined_norm_residual"] = round15(fine.norm_preservation);
        j["refined_symmetry_residual"] = round15(fine.symmetry);
        j["residual_decreases"] = fine.norm_preservation < res.norm_preservation;
    }
    Json prov;
    prov["n_steps"] = cfg.steps;
    prov["duration"] = round15(coupling.grid().duration());
    prov["tolerances"] = tolerances_json();
    j["provenance"] = prov;
    result.summary = j;
    emit(result, cfg.out_prefix + "_oracle.json", dump(j));

    if (cfg.export_matrices) {
        emit(result, cfg.out_prefix + "_A.csv", matrix_csv(db.a_mat));
        emit(result, cfg.out_prefix + "_B.csv", matrix_csv(db.b_mat));
    }
    return result;
}

CommandResult dispatch(const RunConfig& cfg)
{
    switch (cfg.command) {
    case Command::shape: return run_shape(cfg);
    case Command::simulate: return run_simulate(cfg);
    case Command::analyze: return run_analyze(cfg);
    case Command::sweep: return run_sweep(cfg);
    case Command::oracle: return run_oracle(cfg);
    }
    throw UsageError("unknown command");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    try {
        const RunConfig cfg = parse_config(args);
        const CommandResult result = dispatch(cfg);
        for (const std::string& path : result.files)
            out << "wrote " << path << '\n';
        return kExitOk;
    } catch (const HelpRequested& help) {
        out << help.what();
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::domain_error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

} // namespace raman::cli
