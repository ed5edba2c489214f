#include "hcurve/angle.hpp"

#include <algorithm>

namespace hcurve {

double normalize_angle(double x, AngleModulus modulus) {
    const double m = modulus_value(modulus);
    double r = std::fmod(x, m);
    if (r < 0.0) r += m;
    // r + m can round up to m for tiny negative r.
    if (r >= m) r = 0.0;
    return r;
}

double angular_distance(double a, double b, AngleModulus modulus) {
    const double m = modulus_value(modulus);
    const double d = normalize_angle(a - b, modulus);
    return std::min(d, m - d);
}

double signed_angle(double x) {
    double r = normalize_angle(x, AngleModulus::TwoPi);
    if (r > kPi) r -= kTwoPi;
    return r;
}

} // namespace hcurve
