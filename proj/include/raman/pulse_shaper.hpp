#pragma once

#include <span>
#include <vector>

#include "raman/dynamics.hpp"
#include "raman/time_grid.hpp"

namespace raman {

/// Unnormalized quasi-Gaussian profile on x = tau/T in [0, 1]:
///   f(x) = [exp(-4(x - 1/2)^2) - e^-1] cos^2(pi (x - 1/2))
/// Zero (with zero slope) outside the open interval.
double quasi_gaussian(double x);
/// df/dx of quasi_gaussian.
double quasi_gaussian_slope(double x);

/// Target output temporal mode, normalized to unit L2 norm on the grid.
struct SignalMode {
    TimeGrid grid;
    std::vector<double> e0;
    std::vector<double> de0; ///< dE0/dtau, differentiated analytically
    double norm_const;
};

SignalMode make_signal_mode(const TimeGrid& grid);

/// Requested squeezing, given either as the stretch factor e^r or as the
/// mean signal photon number n0 = sinh^2 r (unit retrieval efficiency).
class ShapingTarget {
public:
    static ShapingTarget from_stretch(double e_r);
    static ShapingTarget from_photon_number(double n0);

    double stretch() const { return e_r_; }
    double squeeze_parameter() const;
    double photon_number() const { return n0_; }

    /// Smallest accepted stretch factor; below it the coupling scale sqrt(n0) degenerates.
    static constexpr double kMinStretch = 1.0 + 1e-9;

private:
    ShapingTarget(double e_r, double n0) : e_r_(e_r), n0_(n0) {}

    double e_r_;
    double n0_;
};

struct SpinMagnitude {
    TimeGrid grid;
    std::vector<double> s_abs;
};

/// |S(tau)| from the excitation balance with S(0) = 1:
///   |S|^2 = 1 + n0 [E0^2 + int_0^tau E0^2].
SpinMagnitude spin_magnitude(const ShapingTarget& target, const SignalMode& mode);

/// Control coupling that forces G_{E S^dag}(tau, 0) = sqrt(n0) E0(tau):
///   k = sqrt(n0)/|S| (dE0/dtau + E0/2).
CouplingProfile synthesize_coupling(const ShapingTarget& target, const SignalMode& mode);

/// L2 distance between the simulated G_{E S^dag}(tau,0)/sqrt(n0) and E0.
double verify_retrieval(const CouplingProfile& coupling, const SignalMode& mode,
                        const ShapingTarget& target);

/// Physical parameters of the atomic cell and cavity, angular units (rad/s).
struct PhysicalParams {
    double g = 0.0;        ///< single-atom coupling
    double n_atoms = 0.0;  ///< N
    double delta = 0.0;    ///< Raman mismatch
    double kappa = 0.0;    ///< cavity field decay rate
    double t_signal = 0.0; ///< signal duration T, seconds

    void validate() const;
    /// 2 kappa T, the signal duration in cavity-lifetime units.
    double duration() const { return 2.0 * kappa * t_signal; }
};

struct RabiProfile {
    std::vector<double> omega; ///< control Rabi frequency, rad/s; sign carries pi phase flips
    std::vector<double> q;     ///< T g sqrt(N)/Delta * Omega
};

RabiProfile rabi_profile(const CouplingProfile& coupling, const PhysicalParams& params);

/// Inverse of rabi_profile.
CouplingProfile coupling_from_rabi(const TimeGrid& grid, std::span<const double> omega,
                                   const PhysicalParams& params);

} // namespace raman
