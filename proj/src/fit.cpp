#include "opuc/fit.hpp"

#include "opuc/errors.hpp"

#include <cmath>
#include <vector>

namespace opuc {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) {
        raise(ErrorCode::InvalidArgument, "fit: size mismatch");
    }
    const std::size_t n = x.size();
    if (n < 2) {
        raise(ErrorCode::FitFailed, "fit: need at least two points");
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) {
        raise(ErrorCode::FitFailed, "fit: abscissae are all equal");
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    fit.count = n;
    return fit;
}

namespace {

std::vector<double> logs(std::span<const double> v, const char* what)
{
    std::vector<double> out;
    out.reserve(v.size());
    for (double value : v) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            raise(ErrorCode::FitFailed, std::string("fit: non-positive ") + what);
        }
        out.push_back(std::log(value));
    }
    return out;
}

} // namespace

LinearFit log_linear_fit(std::span<const double> x, std::span<const double> y)
{
    const auto ly = logs(y, "ordinate");
    return linear_fit(x, ly);
}

LinearFit log_log_fit(std::span<const double> x, std::span<const double> y)
{
    const auto lx = logs(x, "abscissa");
    const auto ly = logs(y, "ordinate");
    return linear_fit(lx, ly);
}

} // namespace opuc
