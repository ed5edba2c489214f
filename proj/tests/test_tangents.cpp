#include <doctest.h>

#include <cmath>
#include <vector>

#include "hcurve/circle_gon.hpp"
#include "hcurve/random.hpp"
#include "hcurve/tangents.hpp"
#include "oracles.hpp"

using namespace hcurve;

namespace {

RootMultiset angles(std::vector<double> a) { return RootMultiset::on_unit_circle(a); }

// |Arg P(z) - θ| mod π, with P in long-double product form so that the
// probe stays accurate next to a multiple root.
double arg_deviation(const RootMultiset& roots, Complex z, double theta) {
    oracle::LComplex v{1.0L, 0.0L};
    for (const Complex& r : roots.expanded())
        v *= oracle::LComplex(z.real(), z.imag()) - oracle::LComplex(r.real(), r.imag());
    const double a = static_cast<double>(std::atan2(v.imag(), v.real()));
    return angular_distance(a, theta, AngleModulus::Pi);
}

} // namespace

TEST_SUITE("tangents") {

TEST_CASE("deflation, exact cases") {
    const RootMultiset dbl = angles({0.0, 0.0});
    Deflation d = deflate_at_root(poly_from_roots(dbl), dbl, 0);
    CHECK(d.multiplicity == 2);
    CHECK(std::abs(d.q - 1.0) < 1e-14);

    const RootMultiset pm = angles({0.0, kPi});
    d = deflate_at_root(poly_from_roots(pm), pm, 0);
    CHECK(d.multiplicity == 1);
    CHECK(std::abs(d.q - 2.0) < 1e-14);
}

TEST_CASE("deflation matches the pairwise product") {
    Xorshift64Star rng(6);
    const RootMultiset roots = random_unit_roots(rng, 6);
    const Polynomial p = poly_from_roots(roots);
    for (std::size_t i = 0; i < roots.distinct(); ++i) {
        const Deflation d = deflate_at_root(p, roots, i);
        const auto& e = roots.entries()[i];
        const double expected = static_cast<double>(oracle::deflated_modulus(roots.expanded(), e.root, e.multiplicity));
        CHECK(std::abs(std::abs(d.q) - expected) <= 1e-9 * expected);
    }
}

TEST_CASE("tangent directions, exact cases") {
    const RootMultiset dbl = angles({0.0, 0.0});
    auto dirs = tangent_directions(poly_from_roots(dbl), dbl, 0, 0.0);
    REQUIRE(dirs.size() == 2);
    CHECK(std::fabs(dirs[0]) < 1e-14);
    CHECK(dirs[1] == doctest::Approx(0.5 * kPi).epsilon(1e-14));

    const RootMultiset one = angles({0.0});
    dirs = tangent_directions(poly_from_roots(one), one, 0, 0.0);
    REQUIRE(dirs.size() == 1);
    CHECK(std::fabs(dirs[0]) < 1e-14);
}

TEST_CASE("directions follow the curve to first order") {
    Xorshift64Star rng(15);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> a = random_angles(rng, 5);
        a.push_back(a[0]);  // a double root exercises k = 2
        const RootMultiset roots = angles(a);
        const Polynomial p = poly_from_roots(roots);
        const double theta = rng.uniform() * kPi;
        for (std::size_t i = 0; i < roots.distinct(); ++i) {
            const Complex z = roots.entries()[i].root;
            const auto dirs = tangent_directions(p, roots, i, theta);
            CHECK(dirs.size() == static_cast<std::size_t>(roots.entries()[i].multiplicity));
            for (double phi : dirs) {
                const double coarse = arg_deviation(roots, z + std::polar(1e-5, phi), theta);
                const double fine = arg_deviation(roots, z + std::polar(1e-6, phi), theta);
                CHECK(coarse < 1e-3);
                CHECK(fine < 0.2 * coarse + 1e-12);
                // Off-tangent probes stay a fixed angle away.
                const double off = arg_deviation(roots, z + std::polar(1e-6, phi + 0.25 * kPi / dirs.size()), theta);
                CHECK(off > 0.1);
            }
        }
    }
}

TEST_CASE("directions are equally spaced and shift by pi/k with theta + pi") {
    const RootMultiset roots = angles({0.3, 0.3, 0.3, 2.0, 4.1});
    const Polynomial p = poly_from_roots(roots);
    const auto a = tangent_directions(p, roots, 0, 1.2);
    const auto b = tangent_directions(p, roots, 0, 1.2 + kPi);
    REQUIRE(a.size() == 3);
    for (std::size_t m = 1; m < a.size(); ++m) CHECK(a[m] - a[m - 1] == doctest::Approx(kPi / 3).epsilon(1e-12));
    std::vector<double> shifted;
    for (double d : a) shifted.push_back(normalize_angle(d + kPi / 3, AngleModulus::Pi));
    CHECK(oracle::hausdorff(shifted, b, kPi) <= 1e-12);
    CHECK(oracle::hausdorff(a, b, kPi) <= 1e-12);
}

TEST_CASE("circle tangency, exact cases") {
    const RootMultiset dbl = angles({0.0, 0.0});
    TangentReport r = circle_tangency_test(poly_from_roots(dbl), dbl, 0, 0.0);
    CHECK(r.multiplicity == 2);
    CHECK(r.circle_tangent_dir == doctest::Approx(0.5 * kPi));
    CHECK(r.coincides);
    CHECK(r.on_gon);
    CHECK(r.equivalence == Verdict::Holds);

    const RootMultiset one = angles({0.0});
    r = circle_tangency_test(poly_from_roots(one), one, 0, 0.0);
    CHECK_FALSE(r.coincides);
    CHECK_FALSE(r.on_gon);
    CHECK(r.equivalence == Verdict::Holds);
}

TEST_CASE("placing a root on the gon makes a tangent coincide") {
    Xorshift64Star rng(21);
    const RootMultiset roots = random_unit_roots(rng, 5);
    const Polynomial p = poly_from_roots(roots);
    for (std::size_t i = 0; i < roots.distinct(); ++i) {
        const double theta = theta_placing_root_on_gon(roots, i, rng.uniform_int(0, 4)).value();
        const TangentReport r = circle_tangency_test(p, roots, i, theta);
        CHECK(r.gon_distance < 1e-10);
        CHECK(r.coincides);
        CHECK(r.on_gon);
        CHECK_FALSE(r.inconclusive);
    }
}

TEST_CASE("near-threshold distances are inconclusive") {
    const RootMultiset one = angles({0.0});
    // For the root 1, Ω = 2θ - π, so θ = π/2 + δ puts the vertex 2δ away.
    const TangentReport r = circle_tangency_test(poly_from_roots(one), one, 0, 0.5 * kPi + 1e-8);
    CHECK(r.inconclusive);
    CHECK(r.equivalence == Verdict::Inconclusive);
}

TEST_CASE("reports for every root") {
    const RootMultiset roots = angles({0.0, 0.0, 2.0});
    const auto reports = tangency_reports(roots, 0.4);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].multiplicity == 2);
    CHECK(reports[0].directions.size() == 2);
    CHECK(reports[1].multiplicity == 1);
}

}
