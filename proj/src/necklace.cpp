#include "hcurve/necklace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hcurve/error.hpp"

namespace hcurve {

namespace {

constexpr double kDedupe = 1e-9;

bool near_critical(double theta, const std::vector<double>& critical, double guard) {
    return std::any_of(critical.begin(), critical.end(), [&](double c) {
        return angular_distance(theta, c, AngleModulus::Pi) < guard;
    });
}

} // namespace

CriticalThetas critical_thetas(const Polynomial& p, double tol) {
    CriticalThetas out;
    if (p.degree() < 2) return out;
    const double scale = std::max(1.0, p.max_coefficient());
    std::vector<double> raw;
    for (const Complex& c : critical_points(p)) {
        const Complex v = eval(p, c);
        if (std::abs(v) <= tol * scale) {
            const bool seen = std::any_of(out.multiple_roots.begin(), out.multiple_roots.end(),
                                          [&](Complex z) { return std::abs(z - c) <= 1e-6; });
            if (!seen) out.multiple_roots.push_back(c);
            continue;
        }
        double t = normalize_angle(arg(v), AngleModulus::Pi);
        if (angular_distance(t, 0.0, AngleModulus::Pi) <= 1e-12) t = 0.0;
        raw.push_back(t);
    }
    std::sort(raw.begin(), raw.end());
    for (double t : raw)
        if (out.thetas.empty() || t - out.thetas.back() > kDedupe) out.thetas.push_back(t);
    if (out.thetas.size() > 1 && out.thetas.front() + kPi - out.thetas.back() <= kDedupe)
        out.thetas.pop_back();
    return out;
}

Necklace build_necklace(const Polynomial& p, const NecklaceOptions& options) {
    const CriticalThetas crit = critical_thetas(p, options.root_tol);
    if (!crit.multiple_roots.empty())
        throw NumericalError("non-generic: polynomial has a multiple root");

    Necklace necklace;
    necklace.critical_thetas = crit.thetas;

    std::vector<std::pair<double, double>> intervals;
    const auto& c = crit.thetas;
    if (c.empty()) {
        intervals.emplace_back(0.0, kPi);
    } else {
        for (std::size_t i = 0; i < c.size(); ++i)
            intervals.emplace_back(c[i], i + 1 < c.size() ? c[i + 1] : c.front() + kPi);
    }

    const int count = std::max(3, options.samples_per_bead);
    for (const auto& [a, b] : intervals) {
        const double lo = a + options.guard;
        const double hi = b - options.guard;
        std::vector<Matching> found;
        for (int s = 1; s <= count; ++s) {
            double t = a + (b - a) * s / (count + 1);
            t = lo <= hi ? std::clamp(t, lo, hi) : 0.5 * (a + b);
            found.push_back(matching(p, t));
        }
        if (!std::all_of(found.begin(), found.end(),
                         [&](const Matching& m) { return m == found.front(); })) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "unresolved transition structure in (" << a << ", " << b << ")";
            throw TransitionError(msg.str(), std::move(found));
        }
        necklace.beads.push_back({a, b, found.front()});
    }
    return necklace;
}

std::vector<SweepViolation> sweep_check(const Polynomial& p, const Necklace& necklace, int count,
                                        double guard) {
    std::vector<SweepViolation> out;
    for (int s = 0; s < count; ++s) {
        const double theta = kPi * s / count;
        if (near_critical(theta, necklace.critical_thetas, guard)) continue;
        for (const Bead& bead : necklace.beads) {
            Matching expected;
            if (bead.start < theta && theta < bead.end) {
                expected = bead.matching;
            } else if (bead.start < theta + kPi && theta + kPi < bead.end) {
                // The fan at θ is the fan at θ + π shifted by one index.
                expected = bead.matching.relabeled(-1);
            } else if (necklace.critical_thetas.empty()) {
                expected = bead.matching;
            } else {
                continue;
            }
            Matching found = matching(p, theta);
            if (!(found == expected)) out.push_back({theta, expected, found});
            break;
        }
    }
    return out;
}

} // namespace hcurve
