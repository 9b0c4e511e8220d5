#pragma once

#include <cstdint>
#include <random>

namespace easent::synth {

/// Seeded generator with a fixed, documented algorithm so fixtures are
/// reproducible:
///   engine   std::mt19937_64 (bit-exact by the C++ standard), seeded with the
///            64-bit seed directly
///   uniform  (next >> 11) * 2^-53, in [0, 1)
///   normal   Box-Muller, one variate per call: sqrt(-2 ln(1 - u1)) * cos(2 pi u2)
///   poisson  Knuth's product method; rates above 30 are split into equal
///            chunks of at most 30 whose draws are summed
/// The std:: distributions are not used because their output is
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    double normal(double mean, double sd) { return mean + sd * normal(); }
    std::int64_t poisson(double lambda);
    /// Uniform integer in [0, n) by rejection; n > 0.
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 engine_;
};

} // namespace easent::synth
