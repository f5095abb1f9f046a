#pragma once

#include <span>
#include <vector>

namespace raman {

/// Composite trapezoid over uniformly spaced samples, endpoints included.
double trapezoid(std::span<const double> values, double step);

/// Running trapezoid integral; result[0] = 0, result.size() == values.size().
std::vector<double> cumulative_trapezoid(std::span<const double> values, double step);

/// Running trapezoid with the leading Euler-Maclaurin endpoint correction
/// -h^2/12 (f'(b) - f'(a)) on every interval. Fourth order when the
/// derivative samples are exact.
std::vector<double> cumulative_trapezoid_corrected(std::span<const double> values,
                                                   std::span<const double> derivatives,
                                                   double step);

} // namespace raman
