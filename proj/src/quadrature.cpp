#include "raman/quadrature.hpp"

#include <stdexcept>

namespace raman {

double trapezoid(std::span<const double> values, double step)
{
    if (values.size() < 2)
        return 0.0;
    double sum = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i)
        sum += values[i];
    return sum * step;
}

std::vector<double> cumulative_trapezoid(std::span<const double> values, double step)
{
    std::vector<double> out(values.size(), 0.0);
    for (std::size_t i = 1; i < values.size(); ++i)
        out[i] = out[i - 1] + 0.5 * step * (values[i - 1] + values[i]);
    return out;
}

std::vector<double> cumulative_trapezoid_corrected(std::span<const double> values,
                                                   std::span<const double> derivatives,
                                                   double step)
{
    if (values.size() != derivatives.size())
        throw std::invalid_argument("cumulative_trapezoid_corrected: size mismatch");
    const double correction = step * step / 12.0;
    std::vector<double> out(values.size(), 0.0);
    for (std::size_t i = 1; i < values.size(); ++i)
        out[i] = out[i - 1] + 0.5 * step * (values[i - 1] + values[i])
                 - correction * (derivatives[i] - derivatives[i - 1]);
    return out;
}

} // namespace raman
