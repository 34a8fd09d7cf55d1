// fit.hpp — empirical convergence order from (h, error) samples

#pragma once

#include <utility>
#include <vector>

namespace rqi {

// Least-squares slope of log(error) against log(h).
// Throws InsufficientPoints below 3 samples, NonPositiveValue for h or error <= 0.
double fit_order(const std::vector<std::pair<double, double>>& points);

} // namespace rqi
