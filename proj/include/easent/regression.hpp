#pragma once

#include <span>
#include <string>
#include <utility>

namespace easent::regression {

struct RegressionFit {
    std::string stratum;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;  // 0 when the response is constant
    std::size_t n = 0;
};

/// OLS of earnings surprise on sentiment score, es = slope * sent + intercept.
/// Input pairs are (sentiment, es). Throws Error(TooFewPoints) or
/// Error(DegenerateRegressor).
RegressionFit fit_es_regression(std::span<const std::pair<double, double>> pairs,
                                std::string stratum);

} // namespace easent::regression
