#pragma once

#include <cstddef>
#include <span>

namespace easent::stats {

/// Simple least-squares line y = intercept + slope * x.
struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double ssr = 0.0;  // sum of squared residuals
    double sst = 0.0;  // total sum of squares of y about its mean
    std::size_t n = 0;
};

/// Closed-form fit on mean-centred data. Throws Error(TooFewPoints) for
/// n < 2 or mismatched spans, Error(DegenerateRegressor) when x is constant.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Upper-tail standard normal quantile: z with P(Z > z) = p, for p in (0, 1).
double normal_upper_quantile(double p);

} // namespace easent::stats
