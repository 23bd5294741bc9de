#pragma once

#include <span>

namespace opuc {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t count = 0;
};

// Least squares y = slope * x + intercept. Throws FitFailed with fewer than
// two points or constant x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

// Fits log(y) against x; every y must be positive and finite.
LinearFit log_linear_fit(std::span<const double> x, std::span<const double> y);

// Fits log(y) against log(x).
LinearFit log_log_fit(std::span<const double> x, std::span<const double> y);

} // namespace opuc
