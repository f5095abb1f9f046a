#include "raman/matching_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "raman/errors.hpp"
#include "raman/quadrature.hpp"
#include "raman/squeeze_analysis.hpp"

namespace raman {

namespace {

int sign_of(double v)
{
    return (v > 0.0) - (v < 0.0);
}

} // namespace

SweepRecord run_point(double ratio, const ShapingTarget& target, std::size_t signal_steps)
{
    if (!(ratio > 0.0) || !std::isfinite(ratio))
        throw UsageError("ratio T/t_c must be positive, got " + std::to_string(ratio));

    const TimeGrid grid(signal_steps, ratio);
    const SignalMode mode = make_signal_mode(grid);
    const CouplingProfile coupling = synthesize_coupling(target, mode);
    const GreenSet greens = compute_greens(coupling);
    const SqueezeReport report = analyze(greens);

    SweepRecord rec;
    rec.ratio = ratio;
    rec.e_r = target.stretch();
    rec.n0 = report.n0;
    rec.duan = report.duan;
    rec.eta = report.eta;
    rec.g_ss_final = report.g_ss_final;
    rec.residual = verify_retrieval(coupling, mode, target);
    rec.t_switch_over_T = sign_switch_time(coupling);

    const auto q = coupling.q();
    std::vector<double> q_sq(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        rec.peak_q = std::max(rec.peak_q, std::abs(q[i]));
        q_sq[i] = q[i] * q[i];
    }
    rec.l2_q = std::sqrt(trapezoid(q_sq, 1.0 / static_cast<double>(signal_steps)));

    const auto [lo, hi] = std::minmax_element(coupling.k_tilde().begin(), coupling.k_tilde().end());
    if (*lo < 0.0 && *hi > 0.0)
        rec.reversed_fraction = -*lo / *hi;
    return rec;
}

SweepTable sweep(std::span<const double> ratios, const ShapingTarget& target, std::size_t signal_steps)
{
    if (ratios.empty())
        throw UsageError("sweep needs at least one ratio");
    for (std::size_t i = 1; i < ratios.size(); ++i)
        if (!(ratios[i] > ratios[i - 1]))
            throw UsageError("sweep ratios must be strictly increasing");

    std::vector<std::future<SweepRecord>> pending;
    pending.reserve(ratios.size());
    for (double ratio : ratios)
        pending.push_back(std::async(std::launch::async, [ratio, &target, signal_steps] {
            return run_point(ratio, target, signal_steps);
        }));

    SweepTable table;
    table.records.reserve(ratios.size());
    for (std::size_t i = 0; i < pending.size(); ++i) {
        try {
            table.records.push_back(pending[i].get());
        } catch (const NumericalError& e) {
            for (std::size_t j = i + 1; j < pending.size(); ++j)
                pending[j].wait();
            std::ostringstream msg;
            msg << "sweep point ratio = " << ratios[i] << " failed: " << e.what();
            throw NumericalError(msg.str());
        } catch (const UsageError& e) {
            for (std::size_t j = i + 1; j < pending.size(); ++j)
                pending[j].wait();
            std::ostringstream msg;
            msg << "sweep point ratio = " << ratios[i] << " rejected: " << e.what();
            throw UsageError(msg.str());
        }
    }
    return table;
}

std::optional<double> sign_switch_time(const CouplingProfile& coupling)
{
    const auto k = coupling.k_tilde();
    const TimeGrid& grid = coupling.grid();
    std::size_t last = k.size();
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (sign_of(k[i]) == 0)
            continue;
        if (last != k.size() && sign_of(k[i]) != sign_of(k[last])) {
            const double x0 = grid.fraction(last);
            const double x1 = grid.fraction(i);
            return x0 + (x1 - x0) * k[last] / (k[last] - k[i]);
        }
        last = i;
    }
    return std::nullopt;
}

std::size_t count_sign_changes(const CouplingProfile& coupling)
{
    std::size_t changes = 0;
    int prev = 0;
    for (double v : coupling.k_tilde()) {
        const int s = sign_of(v);
        if (s == 0)
            continue;
        if (prev != 0 && s != prev)
            ++changes;
        prev = s;
    }
    return changes;
}

OptimalRatio optimal_ratio(const SweepTable& table)
{
    const auto& recs = table.records;
    if (recs.size() < 3)
        throw UsageError("optimal_ratio needs at least three sweep records");

    std::size_t best = 0;
    for (std::size_t i = 1; i < recs.size(); ++i)
        if (recs[i].peak_q < recs[best].peak_q)
            best = i;

    OptimalRatio opt;
    opt.ratio = recs[best].ratio;
    opt.peak_q = recs[best].peak_q;
    opt.refined_ratio = opt.ratio;
    opt.refined_peak_q = opt.peak_q;
    if (best == 0 || best + 1 == recs.size()) {
        opt.at_boundary = true;
        return opt;
    }

    // Parabola through (log ratio, peak_q) at the three bracketing records.
    const double x0 = std::log(recs[best - 1].ratio), y0 = recs[best - 1].peak_q;
    const double x1 = std::log(recs[best].ratio), y1 = recs[best].peak_q;
    const double x2 = std::log(recs[best + 1].ratio), y2 = recs[best + 1].peak_q;
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double curvature = (d12 - d01) / (x2 - x0);
    if (!(curvature > 0.0))
        return opt;
    const double vertex = 0.5 * (x0 + x1) - d01 / (2.0 * curvature);
    opt.refined_ratio = std::exp(vertex);
    opt.refined_peak_q = y1 + d01 * (vertex - x1) + curvature * (vertex - x0) * (vertex - x1);
    return opt;
}

std::vector<double> default_ratios()
{
    return {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0};
}

} // namespace raman
