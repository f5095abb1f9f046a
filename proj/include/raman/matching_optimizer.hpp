#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "raman/dynamics.hpp"
#include "raman/pulse_shaper.hpp"

namespace raman {

inline constexpr std::size_t kDefaultSignalSteps = 2048;

struct SweepRecord {
    double ratio = 0.0;  ///< T/t_c, also the grid duration
    double e_r = 0.0;
    double n0 = 0.0;     ///< measured, (eta/2)(cosh 2r - 1)
    double peak_q = 0.0; ///< max_t |q(t/T)|
    double l2_q = 0.0;   ///< sqrt(int_0^1 q^2 d(t/T)), recorded for comparison only
    std::optional<double> t_switch_over_T;
    double reversed_fraction = 0.0; ///< -min(k)/max(k) when k dips below zero, else 0
    double duan = 0.0;
    double residual = 0.0;
    double eta = 0.0;
    double g_ss_final = 0.0;
};

struct SweepTable {
    std::vector<SweepRecord> records;
};

/// Shapes, simulates and scores one ratio T/t_c. The grid always has
/// signal_steps intervals across the signal, whatever the ratio.
SweepRecord run_point(double ratio, const ShapingTarget& target,
                      std::size_t signal_steps = kDefaultSignalSteps);

/// One record per ratio, in the order given. Ratios must be strictly
/// increasing. Points run concurrently; a failure names the offending ratio.
SweepTable sweep(std::span<const double> ratios, const ShapingTarget& target,
                 std::size_t signal_steps = kDefaultSignalSteps);

/// First interior zero crossing of k, as t_s/T, by linear interpolation
/// between the bracketing samples. Exact zeros are skipped.
std::optional<double> sign_switch_time(const CouplingProfile& coupling);

/// Number of sign changes between successive nonzero samples.
std::size_t count_sign_changes(const CouplingProfile& coupling);

struct OptimalRatio {
    double ratio = 0.0;
    double peak_q = 0.0;
    double refined_ratio = 0.0;  ///< parabola vertex in log(ratio); equals ratio at a boundary
    double refined_peak_q = 0.0;
    bool at_boundary = false;    ///< minimum at the first or last record
};

/// Record with the smallest peak_q, refined by a parabolic fit through the
/// bracketing points in log(ratio). Needs at least three records.
OptimalRatio optimal_ratio(const SweepTable& table);

/// T/t_c = 1, 2, 4, ..., 128.
std::vector<double> default_ratios();

} // namespace raman
