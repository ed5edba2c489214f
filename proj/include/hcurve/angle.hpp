#pragma once

#include <cmath>
#include <numbers>

namespace hcurve {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class AngleModulus { TwoPi, Pi };

constexpr double modulus_value(AngleModulus m) { return m == AngleModulus::TwoPi ? kTwoPi : kPi; }

/// Representative of x in [0, modulus). Idempotent.
double normalize_angle(double x, AngleModulus modulus);

/// Smallest distance between two angles on the circle R/modulus.
double angular_distance(double a, double b, AngleModulus modulus);

/// Representative of x modulo 2π in (-π, π].
double signed_angle(double x);

/// An angle stored in its canonical representative.
class Angle {
public:
    Angle() = default;
    Angle(double radians, AngleModulus modulus)
        : value_(normalize_angle(radians, modulus)), modulus_(modulus) {}

    static Angle mod_2pi(double radians) { return {radians, AngleModulus::TwoPi}; }
    static Angle mod_pi(double radians) { return {radians, AngleModulus::Pi}; }

    double value() const { return value_; }
    AngleModulus modulus() const { return modulus_; }

    double distance_to(const Angle& other) const {
        return angular_distance(value_, other.value_, modulus_);
    }

    friend bool operator==(const Angle&, const Angle&) = default;

private:
    double value_ = 0.0;
    AngleModulus modulus_ = AngleModulus::TwoPi;
};

} // namespace hcurve
