#pragma once

#include <cstddef>

namespace raman {

/// Uniform sampling of dimensionless time tau = 2*kappa*t on [0, duration].
/// duration equals T/t_c, the signal length in cavity-lifetime units.
class TimeGrid {
public:
    TimeGrid(std::size_t n_steps, double duration);

    std::size_t n_steps() const { return n_steps_; }
    std::size_t n_points() const { return n_steps_ + 1; }
    double duration() const { return duration_; }
    double step() const { return step_; }

    double tau(std::size_t i) const { return static_cast<double>(i) * step_; }
    /// Position on the t/T axis, in [0, 1].
    double fraction(std::size_t i) const { return static_cast<double>(i) / static_cast<double>(n_steps_); }

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
    std::size_t n_steps_;
    double duration_;
    double step_;
};

} // namespace raman
