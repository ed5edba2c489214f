#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "hcurve/polynomial.hpp"

namespace hcurve {

/// Square sampling window: center ± half_width on both axes, cells per axis.
struct Window {
    Complex center{0.0, 0.0};
    double half_width = 1.0;
    int cells = 256;

    void validate() const;
    double cell_size() const { return 2.0 * half_width / cells; }
};

struct Polyline {
    std::vector<Complex> points;
    bool closed = false;
};

/// The 2n asymptote directions (πk + θ)/n, k = 0..2n-1, in [0, 2π).
struct AsymptoteFan {
    int n = 0;
    double theta = 0.0;
    std::vector<double> angles;

    double half_gap() const { return kPi / (2.0 * n); }
    /// Fan index whose direction is closest to angle, with that distance.
    std::pair<int, double> nearest(double angle) const;
};

AsymptoteFan asymptote_fan(int n, double theta);

/// Fixed-point-free involution on {0, ..., 2n-1}.
class Matching {
public:
    Matching() = default;
    explicit Matching(std::vector<int> partner) : partner_(std::move(partner)) {}
    static Matching from_pairs(int n, const std::vector<std::array<int, 2>>& pairs);

    const std::vector<int>& partner() const { return partner_; }
    int size() const { return static_cast<int>(partner_.size()); }
    int operator[](int k) const { return partner_[static_cast<std::size_t>(k)]; }

    /// Pairs (a, b) with a < b, ordered by a.
    std::vector<std::array<int, 2>> pairs() const;

    bool is_perfect() const;
    bool is_noncrossing() const;

    /// Matching expressed in a fan whose index k is this fan's index k + s:
    /// result[k] = this[k + s] - s (mod 2n).
    Matching relabeled(int s) const;

    friend bool operator==(const Matching&, const Matching&) = default;

private:
    std::vector<int> partner_;
};

struct CurveComponent {
    Polyline polyline;
    std::optional<std::array<int, 2>> ends;  // fan indices, absent when bounded or ambiguous
    bool ambiguous = false;
};

/// Im(e^{-iθ} P(z)).
double implicit_value(const Polynomial& p, double theta, Complex z);

/// Marching-squares contour of implicit_value on the window, with linear
/// edge interpolation, cell-centre saddle resolution and per-vertex Newton
/// projection onto the curve. Chains are linked in edge-index order, open
/// chains first.
std::vector<Polyline> trace(const Polynomial& p, double theta, const Window& window);

/// Joins open polylines whose ends meet away from the window boundary
/// (within max_gap) into single polylines.
std::vector<Polyline> merge_polylines(std::vector<Polyline> lines, const Window& window,
                                      double max_gap);

/// 2 n (1 + max |z_i|), past which the curve follows its asymptotes closely.
double asymptote_validity_radius(const Polynomial& p);

/// Centroid of the roots, -a_{n-1} / n.
Complex root_centroid(const Polynomial& p);

/// Traced and merged polylines with their exit directions assigned to fan
/// indices. An end farther than half a fan gap from every asymptote is
/// marked ambiguous.
std::vector<CurveComponent> components(const Polynomial& p, double theta, const Window& window,
                                       const AsymptoteFan& fan);

/// Matching induced by component end pairs; throws NumericalError if they do
/// not form a perfect matching.
Matching matching_from_components(const std::vector<CurveComponent>& comps, int n);

struct ContinuationOptions {
    double radius = 0.0;               // 0 selects asymptote_validity_radius
    double initial_step = 1.0 / 200.0; // fraction of the radius
    double min_step = 1e-6;            // fraction of the radius
    double guard = 1e-6;               // refused distance to a critical θ (mod π)
    int max_steps = 2'000'000;
};

struct ContinuationResult {
    Matching matching;
    /// One path per component, traced from its lower fan index, ordered by it.
    std::vector<Polyline> paths;
};

/// Follows the curve from each asymptote entry on the circle |z - c| = R
/// (c the root centroid) by tangent prediction and Newton correction along
/// the gradient until it leaves the disc again.
ContinuationResult trace_matching(const Polynomial& p, double theta,
                                  const ContinuationOptions& options = {});

/// Matching computed by continuation on the circle of the given radius.
Matching matching(const Polynomial& p, double theta, double radius = 0.0);

} // namespace hcurve
