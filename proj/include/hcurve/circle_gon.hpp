#pragma once

#include <vector>

#include "hcurve/angle.hpp"
#include "hcurve/polynomial.hpp"

namespace hcurve {

/// Inputs farther than this from |z| = 1 are rejected.
inline constexpr double kCircleTolerance = 1e-9;
/// Default tolerance for matching circle zeros against the predicted set.
inline constexpr double kVerifyTolerance = 1e-8;

/// Regular n-gon on the unit circle: vertices at omega + 2πk/n, k = 0..n-1.
struct NGon {
    Angle omega;
    int n = 0;
    std::vector<Complex> vertices;

    /// Vertex angles in [0, 2π), same order as vertices.
    std::vector<double> angles() const;
};

/// Throws DomainError naming the first root with ||z| - 1| > tol.
void require_on_unit_circle(const RootMultiset& roots, double tol = kCircleTolerance);

/// Gon phase (2θ - Σ Arg z_j)/n - π mod 2π with Arg in [0, 2π), counting multiplicity.
Angle omega(const RootMultiset& roots, double theta);

NGon gon_vertices(const RootMultiset& roots, double theta);

struct CircleZero {
    double angle = 0.0;   // in [0, 2π)
    double residual = 0.0;  // |Im(e^{-iθ} P(e^{i angle}))|
    int multiplicity = 1;
};

struct CircleZeroSet {
    std::vector<CircleZero> zeros;  // strictly increasing angles

    int total_multiplicity() const;
    /// Angles repeated by multiplicity.
    std::vector<double> expanded() const;
};

struct CircleZeroOptions {
    int samples = 0;         // 0 selects max(4096, 64 n)
    double width = 1e-13;    // bisection bracket width
};

/// Zeros of g(t) = Im(e^{-iθ} P(e^{it})) on [0, 2π): sign changes are
/// bracketed on a uniform sample and bisected, then Newton-polished; interior
/// minima of |g| are refined on g' and accepted as even-order zeros when they
/// reach rounding level. Zeros that cannot be separated in double precision
/// are merged into one cluster whose multiplicity is the order of the first
/// derivative of g that does not vanish there.
/// Requires samples >= 16 n.
CircleZeroSet circle_zeros(const Polynomial& p, double theta, const CircleZeroOptions& options = {});

/// Same, with an explicit sample count and bisection width.
CircleZeroSet circle_zeros(const Polynomial& p, double theta, int samples, double width);

struct MatchedPair {
    double predicted = 0.0;
    double found = 0.0;
    double distance = 0.0;
};

struct VerificationReport {
    bool pass = false;
    Angle omega;
    NGon gon;
    CircleZeroSet zeros;
    std::vector<double> predicted;  // root angles by multiplicity, then gon angles
    std::vector<MatchedPair> matched_pairs;
    double max_distance = 0.0;
    std::vector<double> unmatched_predicted;
    std::vector<double> unmatched_found;
};

/// Greedy nearest-first matching of two angle multisets on the circle. Only
/// pairs within tol are accepted; everything else is left over. Fills
/// matched_pairs, unmatched_*, max_distance and pass of report.
void match_circular(const std::vector<double>& predicted, const std::vector<double>& found,
                    double tol, VerificationReport& report);

/// Checks that the curve meets the unit circle exactly in the roots plus the
/// gon vertices, as multisets within tol.
VerificationReport verify_gon(const RootMultiset& roots, double theta,
                                      double tol = kVerifyTolerance,
                                      const CircleZeroOptions& options = {});

/// θ (mod π) for which gon vertex slot k coincides with root entry i.
Angle theta_placing_root_on_gon(const RootMultiset& roots, std::size_t index, int slot);

} // namespace hcurve
