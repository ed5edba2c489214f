#pragma once

#include <cstdint>
#include <vector>

#include "hcurve/polynomial.hpp"

namespace hcurve {

/// xorshift64* (shifts 12, 25, 27; multiplier 0x2545F4914F6CDD1D), seeded
/// through one splitmix64 step so that nearby seeds give unrelated streams.
/// Fixed here rather than taken from <random> so that seeded instances are
/// identical on every platform.
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed);

    std::uint64_t next();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi);

private:
    std::uint64_t state_;
};

/// n angles uniform in [0, 2π).
std::vector<double> random_angles(Xorshift64Star& rng, int n);

/// n roots e^{it} with t uniform in [0, 2π).
RootMultiset random_unit_roots(Xorshift64Star& rng, int n);

} // namespace hcurve
