#include "raman/pulse_shaper.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "raman/errors.hpp"
#include "raman/quadrature.hpp"

namespace raman {

namespace {

const double kInvE = std::exp(-1.0);

void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* where)
{
    if (!(a == b))
        throw UsageError(std::string(where) + ": grids differ");
}

} // namespace

double quasi_gaussian(double x)
{
    if (x <= 0.0 || x >= 1.0)
        return 0.0;
    const double u = x - 0.5;
    const double c = std::cos(std::numbers::pi * u);
    return (std::exp(-4.0 * u * u) - kInvE) * c * c;
}

double quasi_gaussian_slope(double x)
{
    if (x <= 0.0 || x >= 1.0)
        return 0.0;
    const double u = x - 0.5;
    const double a = std::exp(-4.0 * u * u);
    const double c = std::cos(std::numbers::pi * u);
    const double s = std::sin(std::numbers::pi * u);
    return -8.0 * u * a * c * c - 2.0 * std::numbers::pi * (a - kInvE) * c * s;
}

SignalMode make_signal_mode(const TimeGrid& grid)
{
    const std::size_t n = grid.n_points();
    SignalMode mode{grid, std::vector<double>(n), std::vector<double>(n), 0.0};
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.fraction(i);
        mode.e0[i] = quasi_gaussian(x);
        mode.de0[i] = quasi_gaussian_slope(x) / grid.duration();
        sq[i] = mode.e0[i] * mode.e0[i];
    }
    mode.norm_const = 1.0 / std::sqrt(trapezoid(sq, grid.step()));
    for (std::size_t i = 0; i < n; ++i) {
        mode.e0[i] *= mode.norm_const;
        mode.de0[i] *= mode.norm_const;
    }
    return mode;
}

ShapingTarget ShapingTarget::from_stretch(double e_r)
{
    if (!std::isfinite(e_r) || e_r <= kMinStretch)
        throw UsageError("stretch factor e^r must exceed 1, got " + std::to_string(e_r));
    const double sh = 0.5 * (e_r - 1.0 / e_r);
    return ShapingTarget(e_r, sh * sh);
}

ShapingTarget ShapingTarget::from_photon_number(double n0)
{
    if (!std::isfinite(n0) || n0 <= 0.0)
        throw UsageError("photon number n0 must be positive, got " + std::to_string(n0));
    const double root = std::sqrt(n0);
    const double e_r = root + std::sqrt(n0 + 1.0);
    if (e_r <= kMinStretch)
        throw UsageError("photon number n0 too small to shape a coupling: " + std::to_string(n0));
    return ShapingTarget(e_r, n0);
}

double ShapingTarget::squeeze_parameter() const
{
    return std::log(e_r_);
}

SpinMagnitude spin_magnitude(const ShapingTarget& target, const SignalMode& mode)
{
    const std::size_t n = mode.grid.n_points();
    std::vector<double> density(n), slope(n);
    for (std::size_t i = 0; i < n; ++i) {
        density[i] = mode.e0[i] * mode.e0[i];
        slope[i] = 2.0 * mode.e0[i] * mode.de0[i];
    }
    const std::vector<double> leaked = cumulative_trapezoid_corrected(density, slope, mode.grid.step());

    const double n0 = target.photon_number();
    SpinMagnitude spin{mode.grid, std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i)
        spin.s_abs[i] = std::sqrt(1.0 + n0 * (density[i] + leaked[i]));
    return spin;
}

CouplingProfile synthesize_coupling(const ShapingTarget& target, const SignalMode& mode)
{
    const SpinMagnitude spin = spin_magnitude(target, mode);
    const double amplitude = std::sqrt(target.photon_number());
    std::vector<double> k(mode.grid.n_points());
    for (std::size_t i = 0; i < k.size(); ++i)
        k[i] = amplitude / spin.s_abs[i] * (mode.de0[i] + 0.5 * mode.e0[i]);
    return CouplingProfile(mode.grid, std::move(k));
}

double verify_retrieval(const CouplingProfile& coupling, const SignalMode& mode,
                        const ShapingTarget& target)
{
    require_same_grid(coupling.grid(), mode.grid, "verify_retrieval");
    const ForwardGreens fwd = green_forward(coupling);
    const double scale = 1.0 / std::sqrt(target.photon_number());
    std::vector<double> diff(mode.e0.size());
    for (std::size_t i = 0; i < diff.size(); ++i) {
        const double d = fwd.g_es[i] * scale - mode.e0[i];
        diff[i] = d * d;
    }
    return std::sqrt(trapezoid(diff, mode.grid.step()));
}

void PhysicalParams::validate() const
{
    if (!(g != 0.0) || !std::isfinite(g))
        throw UsageError("physical params: g must be nonzero");
    if (!(n_atoms >= 1.0))
        throw UsageError("physical params: n_atoms must be >= 1");
    if (!(delta != 0.0) || !std::isfinite(delta))
        throw UsageError("physical params: delta must be nonzero");
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw UsageError("physical params: kappa must be positive");
    if (!(t_signal > 0.0) || !std::isfinite(t_signal))
        throw UsageError("physical params: t_signal must be positive");
}

namespace {

// Omega = k * scale, scale = 2 kappa Delta / (g sqrt(N)).
double rabi_scale(const PhysicalParams& params, const TimeGrid& grid)
{
    params.validate();
    const double duration = params.duration();
    if (std::abs(duration - grid.duration()) > 1e-9 * std::max(1.0, duration))
        throw UsageError("physical params give 2*kappa*T = " + std::to_string(duration)
                         + " but the grid spans " + std::to_string(grid.duration()));
    return 2.0 * params.kappa * params.delta / (params.g * std::sqrt(params.n_atoms));
}

} // namespace

RabiProfile rabi_profile(const CouplingProfile& coupling, const PhysicalParams& params)
{
    const double scale = rabi_scale(params, coupling.grid());
    const double q_factor = params.t_signal * params.g * std::sqrt(params.n_atoms) / params.delta;
    const auto k = coupling.k_tilde();
    RabiProfile out{std::vector<double>(k.size()), std::vector<double>(k.size())};
    for (std::size_t i = 0; i < k.size(); ++i) {
        out.omega[i] = k[i] * scale;
        out.q[i] = q_factor * out.omega[i];
    }
    return out;
}

CouplingProfile coupling_from_rabi(const TimeGrid& grid, std::span<const double> omega,
                                   const PhysicalParams& params)
{
    const double scale = rabi_scale(params, grid);
    std::vector<double> k(omega.size());
    for (std::size_t i = 0; i < k.size(); ++i)
        k[i] = omega[i] / scale;
    return CouplingProfile(grid, std::move(k));
}

} // namespace raman
