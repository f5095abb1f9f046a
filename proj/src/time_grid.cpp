#include "raman/time_grid.hpp"

#include <cmath>
#include <string>

#include "raman/errors.hpp"

namespace raman {

TimeGrid::TimeGrid(std::size_t n_steps, double duration)
    : n_steps_(n_steps), duration_(duration), step_(0.0)
{
    if (n_steps == 0)
        throw UsageError("time grid needs at least one step");
    if (!(duration > 0.0) || !std::isfinite(duration))
        throw UsageError("time grid duration must be positive and finite, got " + std::to_string(duration));
    step_ = duration / static_cast<double>(n_steps);
}

} // namespace raman
