#include "hcurve/tangents.hpp"

#include <algorithm>
#include <cmath>

#include "hcurve/circle_gon.hpp"
#include "hcurve/error.hpp"

namespace hcurve {

Deflation deflate_at_root(const Polynomial& p, const RootMultiset& roots, std::size_t index) {
    if (index >= roots.entries().size()) throw DomainError("root index out of range");
    const RootEntry& e = roots.entries()[index];
    Polynomial q = p;
    for (int m = 0; m < e.multiplicity; ++m) q = divide_linear(q, e.root).first;
    const Complex value = eval(q, e.root);
    // Relative to what Q(z_i) would be with every other root at distance one.
    if (std::abs(value) <= 1e-12 * std::max(1.0, q.max_coefficient()))
        throw NumericalError("deflated value vanishes; root clustering failed upstream");
    return {e.multiplicity, value};
}

std::vector<double> tangent_directions(const Polynomial& p, const RootMultiset& roots,
                                       std::size_t index, double theta) {
    const Deflation d = deflate_at_root(p, roots, index);
    const double base = theta - arg(d.q);
    std::vector<double> out;
    for (int m = 0; m < d.multiplicity; ++m)
        out.push_back(normalize_angle((base + m * kPi) / d.multiplicity, AngleModulus::Pi));
    std::sort(out.begin(), out.end());
    return out;
}

TangentReport circle_tangency_test(const Polynomial& p, const RootMultiset& roots,
                                   std::size_t index, double theta, double tol) {
    require_on_unit_circle(roots);
    TangentReport r;
    const RootEntry& e = roots.entries()[index];
    r.root = e.root;
    r.multiplicity = e.multiplicity;
    r.directions = tangent_directions(p, roots, index, theta);
    r.circle_tangent_dir = normalize_angle(arg(e.root) + 0.5 * kPi, AngleModulus::Pi);

    r.tangent_distance = kPi;
    for (double d : r.directions)
        r.tangent_distance = std::min(
            r.tangent_distance, angular_distance(d, r.circle_tangent_dir, AngleModulus::Pi));

    const NGon gon = gon_vertices(roots, theta);
    r.gon_distance = kPi;
    for (double a : gon.angles())
        r.gon_distance =
            std::min(r.gon_distance, angular_distance(a, arg(e.root), AngleModulus::TwoPi));

    r.coincides = r.tangent_distance <= tol;
    r.on_gon = r.gon_distance <= tol;
    auto in_band = [&](double d) { return d >= 0.1 * tol && d <= 10.0 * tol; };
    r.inconclusive = in_band(r.tangent_distance) || in_band(r.gon_distance);
    if (r.inconclusive)
        r.equivalence = Verdict::Inconclusive;
    else
        r.equivalence = r.coincides == r.on_gon ? Verdict::Holds : Verdict::Fails;
    return r;
}

std::vector<TangentReport> tangency_reports(const RootMultiset& roots, double theta, double tol) {
    const Polynomial p = poly_from_roots(roots);
    std::vector<TangentReport> out;
    for (std::size_t i = 0; i < roots.entries().size(); ++i)
        out.push_back(circle_tangency_test(p, roots, i, theta, tol));
    return out;
}

} // namespace hcurve
