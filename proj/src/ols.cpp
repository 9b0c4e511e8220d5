#include "easent/ols.hpp"

#include "easent/error.hpp"

#include <cmath>
#include <string>

namespace easent::stats {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw Error(ErrorKind::TooFewPoints, "regressor and response lengths differ");
    }
    const std::size_t n = x.size();
    if (n < 2) {
        throw Error(ErrorKind::TooFewPoints, "line fit needs at least 2 points, got " +
                                                 std::to_string(n));
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
    if (!(sxx > 0.0)) {
        throw Error(ErrorKind::DegenerateRegressor, "regressor is constant");
    }

    LineFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.sst = syy;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (y[i] - my) - fit.slope * (x[i] - mx);
        fit.ssr += r * r;
    }
    return fit;
}

double normal_upper_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw Error(ErrorKind::InvalidConfig, "tail probability must be in (0, 1)");
    }
    // bisection on Q(z) = erfc(z / sqrt 2) / 2, which is strictly decreasing
    double lo = -40.0;
    double hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double q = 0.5 * std::erfc(mid / std::sqrt(2.0));
        if (q > p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace easent::stats
