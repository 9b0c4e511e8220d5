#include "easent/rng.hpp"

#include <cmath>
#include <numbers>

namespace easent::synth {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::int64_t Rng::poisson(double lambda) {
    if (!(lambda > 0.0)) {
        return 0;
    }
    constexpr double kChunk = 30.0;
    const auto chunks = static_cast<std::int64_t>(std::ceil(lambda / kChunk));
    const double part = lambda / static_cast<double>(chunks);
    const double limit = std::exp(-part);
    std::int64_t total = 0;
    for (std::int64_t c = 0; c < chunks; ++c) {
        double prod = uniform();
        while (prod > limit) {
            ++total;
            prod *= uniform();
        }
    }
    return total;
}

std::uint64_t Rng::below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = engine_();
    while (x >= limit) {
        x = engine_();
    }
    return x % n;
}

} // namespace easent::synth
