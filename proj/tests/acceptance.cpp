// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "raman/dynamics.hpp"
#include "raman/matching_optimizer.hpp"
#include "raman/pulse_shaper.hpp"
#include "raman/squeeze_analysis.hpp"

using namespace raman;

namespace {

constexpr std::array<double, 3> kStretches{1.4, 6.5, 20.0};

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

CouplingProfile shaped(double ratio, double e_r, std::size_t steps = kDefaultSignalSteps)
{
    return synthesize_coupling(ShapingTarget::from_stretch(e_r), make_signal_mode(TimeGrid(steps, ratio)));
}

std::string fmt(double v)
{
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

Outcome photon_number_regression()
{
    const auto start = Clock::now();
    const std::array<double, 3> expected{0.116, 10.07, 99.5};
    const std::array<double, 3> tolerance{0.005, 0.05, 0.5};
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < kStretches.size(); ++i) {
        const SqueezeReport rep = analyze(compute_greens(shaped(8.0, kStretches[i])));
        ok = ok && std::abs(rep.n0 - expected[i]) <= tolerance[i] && std::abs(rep.eta - 1.0) < 1e-6;
        detail += "n0(" + fmt(kStretches[i]) + ")=" + fmt(rep.n0) + " ";
    }
    const double t = seconds_since(start);
    return {ok && t < 1.0, detail + "time=" + fmt(t) + "s"};
}

Outcome mode_fidelity()
{
    const auto start = Clock::now();
    double worst = 0.0;
    int points = 0;
    for (double ratio : default_ratios())
        for (double e_r : kStretches) {
            const ShapingTarget target = ShapingTarget::from_stretch(e_r);
            const SignalMode mode = make_signal_mode(TimeGrid(kDefaultSignalSteps, ratio));
            worst = std::max(worst, verify_retrieval(synthesize_coupling(target, mode), mode, target));
            ++points;
        }
    const double t = seconds_since(start);
    return {worst < 1e-6 && points == 24 && t < 5.0,
            std::to_string(points) + " points, max residual=" + fmt(worst) + " time=" + fmt(t) + "s"};
}

Outcome optimal_matching()
{
    const auto start = Clock::now();
    bool ok = true;
    std::string detail;
    for (double e_r : kStretches) {
        const OptimalRatio best = optimal_ratio(sweep(default_ratios(), ShapingTarget::from_stretch(e_r)));
        ok = ok && best.ratio == 8.0 && best.refined_ratio >= 6.0 && best.refined_ratio <= 12.0;
        detail += "e^r=" + fmt(e_r) + ": argmin=" + fmt(best.ratio) + " refined=" + fmt(best.refined_ratio) + " ";
    }
    const double t = seconds_since(start);
    return {ok && t < 5.0, detail + "time=" + fmt(t) + "s"};
}

Outcome sign_switch_structure()
{
    const std::size_t changes_fast = count_sign_changes(shaped(1.0, 6.5));
    const std::size_t changes_slow = count_sign_changes(shaped(128.0, 6.5));
    const double step_fraction = 1.0 / static_cast<double>(kDefaultSignalSteps);
    double spread = 0.0;
    bool all_found = true;
    for (double ratio : default_ratios()) {
        std::vector<double> ts;
        for (double e_r : kStretches) {
            const auto s = sign_switch_time(shaped(ratio, e_r));
            all_found = all_found && s.has_value();
            if (s)
                ts.push_back(*s);
        }
        if (!ts.empty())
            spread = std::max(spread, *std::max_element(ts.begin(), ts.end()) - *std::min_element(ts.begin(), ts.end()));
    }
    const bool ok = changes_fast == 1 && changes_slow == 0 && all_found && spread <= step_fraction;
    return {ok, "sign changes: ratio 1 -> " + std::to_string(changes_fast) + ", ratio 128 -> "
                    + std::to_string(changes_slow) + "; t_s/T spread over e^r=" + fmt(spread)};
}

Outcome commutator_identities()
{
    double worst_norm = 0.0;
    double worst_eta = 0.0;
    for (double ratio : default_ratios())
        for (double e_r : kStretches) {
            const GreenSet greens = compute_greens(shaped(ratio, e_r));
            const double target = greens.g_ss_final() * greens.g_ss_final() - 1.0;
            worst_norm = std::max({worst_norm, std::abs(greens.input_norm() / target - 1.0),
                                   std::abs(greens.output_norm() / target - 1.0)});
            worst_eta = std::max(worst_eta, std::abs(retrieval_efficiency(greens) - 1.0));
        }
    return {worst_norm < 1e-6 && worst_eta < 1e-6,
            "max relative N1/N2 error=" + fmt(worst_norm) + " max |eta-1|=" + fmt(worst_eta)};
}

Outcome nonmonotone_history()
{
    const std::vector<double> r = squeezing_history(shaped(1.0, 6.5));
    const double peak = std::exp(*std::max_element(r.begin(), r.end()));
    const double final_value = std::exp(r.back());
    return {peak > final_value && std::abs(final_value - 6.5) < 1e-6,
            "max e^r(tau)=" + fmt(peak) + " e^r(T)=" + fmt(final_value)};
}

Outcome symplectic_oracle()
{
    const auto start = Clock::now();
    bool ok = true;
    std::string detail;
    for (double ratio : {1.0, 8.0}) {
        const CouplingProfile coupling = shaped(ratio, 1.4);
        const double g = compute_greens(coupling).g_ss_final();
        const double expected = std::sqrt(g * g - 1.0);
        const DiscreteBogolyubov db = discrete_bogolyubov(coupling, 128);
        const SymplecticResiduals res = symplectic_residuals(db);
        const std::vector<double> sv = singular_values(db.b_mat);
        const SymplecticResiduals fine = symplectic_residuals(discrete_bogolyubov(coupling, 256));
        ok = ok && res.norm_preservation < 1e-3 && res.symmetry < 1e-3
             && std::abs(sv[0] / expected - 1.0) < 1e-3 && std::abs(sv[1] / expected - 1.0) < 1e-3 && sv[2] < 1e-3
             && fine.norm_preservation < res.norm_preservation;
        detail += "ratio " + fmt(ratio) + ": norm=" + fmt(res.norm_preservation) + " sym=" + fmt(res.symmetry)
                  + " sv=" + fmt(sv[0]) + "," + fmt(sv[1]) + " vs " + fmt(expected) + " rest=" + fmt(sv[2])
                  + " norm@256=" + fmt(fine.norm_preservation) + "; ";
    }
    const double t = seconds_since(start);
    return {ok && t < 10.0, detail + "time=" + fmt(t) + "s"};
}

Outcome duan_identities()
{
    double worst_pure = 0.0;
    double worst_thermal = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double r = 3.0 * i / 99.0;
        const double e = std::exp(-2.0 * r);
        worst_pure = std::max(worst_pure, std::abs(duan_variance(1.0, r) - e) / e);
        const double c2 = std::cosh(r) * std::cosh(r);
        worst_thermal = std::max(worst_thermal, std::abs(duan_variance(0.0, r) - c2) / c2);
    }
    const double eps = 4.0 * std::numeric_limits<double>::epsilon();
    const bool ok = worst_pure <= eps && worst_thermal <= 1e-14 && duan_variance(1.0, 0.0) == 1.0;
    return {ok, "max rel err e^-2r=" + fmt(worst_pure) + " cosh^2 r=" + fmt(worst_thermal)};
}

Outcome integrator_order()
{
    constexpr std::array<std::size_t, 5> steps{256, 512, 1024, 2048, 4096};
    const double c = 2.0;
    const double duration = 4.0;
    std::array<double, 5> h{};
    std::array<double, 5> err{};
    for (std::size_t n = 0; n < steps.size(); ++n) {
        const TimeGrid grid(steps[n], duration);
        const CouplingProfile coupling = CouplingProfile::constant(grid, c);
        const Trajectory a = integrate_homogeneous(coupling, 1.0, 0.0);
        const Trajectory b = integrate_homogeneous(coupling, 0.0, 1.0);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.n_points(); ++i) {
            const auto m = oracle::constant_coupling_propagator(c, grid.tau(i));
            worst = std::max({worst, std::abs(a.e_field[i] - m[0][0]), std::abs(a.s_dag[i] - m[1][0]),
                              std::abs(b.e_field[i] - m[0][1]), std::abs(b.s_dag[i] - m[1][1])});
        }
        h[n] = grid.step();
        err[n] = worst;
    }
    const double slope = oracle::loglog_slope(h, err);
    return {std::abs(slope - 4.0) <= 0.2,
            "fitted exponent=" + fmt(slope) + " err(256)=" + fmt(err.front()) + " err(4096)=" + fmt(err.back())};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"photon-number regression", photon_number_regression},
        {"mode fidelity", mode_fidelity},
        {"optimal matching", optimal_matching},
        {"sign-switch structure", sign_switch_structure},
        {"commutator identities", commutator_identities},
        {"non-monotone squeezing history", nonmonotone_history},
        {"symplectic oracle", symplectic_oracle},
        {"duan identities", duan_identities},
        {"integrator order", integrator_order},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s [%zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
