#pragma once

#include <vector>

#include "hcurve/polynomial.hpp"

namespace hcurve {

inline constexpr double kTangentTolerance = 1e-8;

struct Deflation {
    int multiplicity = 0;
    Complex q;  // Q(z_i) where P(z) = (z - z_i)^k Q(z)
};

/// Divides P by (z - z_i) k times, k the multiplicity of root entry i.
/// Throws NumericalError when |Q(z_i)| vanishes (roots clustered upstream).
Deflation deflate_at_root(const Polynomial& p, const RootMultiset& roots, std::size_t index);

/// The k tangent directions (mod π) of the curve at root entry i:
/// (θ - Arg Q(z_i) + mπ)/k, m = 0..k-1, sorted.
std::vector<double> tangent_directions(const Polynomial& p, const RootMultiset& roots,
                                       std::size_t index, double theta);

enum class Verdict { Holds, Fails, Inconclusive };

struct TangentReport {
    Complex root;
    int multiplicity = 0;
    std::vector<double> directions;   // mod π
    double circle_tangent_dir = 0.0;  // Arg z_i + π/2 mod π
    double tangent_distance = 0.0;    // closest direction to the circle tangent, mod π
    double gon_distance = 0.0;        // closest gon vertex to z_i, mod 2π
    bool coincides = false;
    bool on_gon = false;
    /// A distance fell within [tol/10, 10 tol]; the booleans are not trusted.
    bool inconclusive = false;
    /// coincides == on_gon, or Inconclusive.
    Verdict equivalence = Verdict::Inconclusive;
};

/// Compares the tangents at root entry i against the unit circle's tangent and
/// reports whether z_i is a gon vertex. Roots must lie on the unit circle.
TangentReport circle_tangency_test(const Polynomial& p, const RootMultiset& roots,
                                   std::size_t index, double theta,
                                   double tol = kTangentTolerance);

/// One report per root entry.
std::vector<TangentReport> tangency_reports(const RootMultiset& roots, double theta,
                                            double tol = kTangentTolerance);

} // namespace hcurve
