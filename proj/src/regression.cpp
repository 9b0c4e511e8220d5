#include "easent/regression.hpp"

#include "easent/ols.hpp"

#include <algorithm>
#include <vector>

namespace easent::regression {

RegressionFit fit_es_regression(std::span<const std::pair<double, double>> pairs,
                                std::string stratum) {
    std::vector<double> x;
    std::vector<double> y;
    x.reserve(pairs.size());
    y.reserve(pairs.size());
    for (const auto& [sent, es] : pairs) {
        x.push_back(sent);
        y.push_back(es);
    }
    const stats::LineFit line = stats::fit_line(x, y);
    RegressionFit fit;
    fit.stratum = std::move(stratum);
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.n = line.n;
    fit.r_squared = line.sst > 0.0 ? std::clamp(1.0 - line.ssr / line.sst, 0.0, 1.0) : 0.0;
    return fit;
}

} // namespace easent::regression
