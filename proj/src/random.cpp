#include "hcurve/random.hpp"

namespace hcurve {

Xorshift64Star::Xorshift64Star(std::uint64_t seed) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    state_ = z != 0 ? z : 0x9E3779B97F4A7C15ULL;
}

std::uint64_t Xorshift64Star::next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
}

double Xorshift64Star::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

int Xorshift64Star::uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(next() % span);
}

std::vector<double> random_angles(Xorshift64Star& rng, int n) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back(kTwoPi * rng.uniform());
    return out;
}

RootMultiset random_unit_roots(Xorshift64Star& rng, int n) {
    return RootMultiset::on_unit_circle(random_angles(rng, n));
}

} // namespace hcurve
