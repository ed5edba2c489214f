#include <doctest.h>

#include <cmath>
#include <vector>

#include "hcurve/necklace.hpp"
#include "hcurve/random.hpp"

using namespace hcurve;

namespace {

Polynomial from(std::vector<Complex> roots) { return poly_from_roots(RootMultiset(roots)); }

} // namespace

TEST_SUITE("necklace") {

TEST_CASE("critical thetas, exact cases") {
    auto crit = critical_thetas(from({{1, 0}, {-1, 0}}));
    REQUIRE(crit.thetas.size() == 1);
    CHECK(crit.thetas[0] == 0.0);
    CHECK(crit.multiple_roots.empty());

    crit = critical_thetas(from({{1, 0}, {1, 0}}));
    CHECK(crit.thetas.empty());
    REQUIRE(crit.multiple_roots.size() == 1);
    CHECK(std::abs(crit.multiple_roots[0] - 1.0) < 1e-12);

    // Roots {0, 1, -1}: P(±1/√3) = ∓2/(3√3) are both real.
    crit = critical_thetas(from({{0, 0}, {1, 0}, {-1, 0}}));
    REQUIRE(crit.thetas.size() == 1);
    CHECK(crit.thetas[0] == 0.0);

    CHECK(critical_thetas(from({{1, 0}})).thetas.empty());
}

TEST_CASE("critical thetas are Arg P(c) mod pi") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Xorshift64Star rng(seed);
        const int n = rng.uniform_int(2, 9);
        const Polynomial p = poly_from_roots(random_unit_roots(rng, n));
        const auto crit = critical_thetas(p);
        CHECK(crit.thetas.size() <= static_cast<std::size_t>(n - 1));
        for (std::size_t i = 1; i < crit.thetas.size(); ++i) CHECK(crit.thetas[i] > crit.thetas[i - 1]);
        for (const Complex& c : critical_points(p)) {
            const double expected = std::fmod(std::atan2(eval(p, c).imag(), eval(p, c).real()) + 2 * kPi, kPi);
            double best = INFINITY;
            for (double t : crit.thetas) best = std::min(best, angular_distance(t, expected, AngleModulus::Pi));
            CHECK(best <= 1e-9);
        }
    }
}

TEST_CASE("necklace of a line") {
    const Necklace nk = build_necklace(from({{1, 0}}));
    CHECK(nk.critical_thetas.empty());
    REQUIRE(nk.beads.size() == 1);
    CHECK(nk.beads[0].start == 0.0);
    CHECK(nk.beads[0].end == doctest::Approx(kPi));
    CHECK(nk.beads[0].matching == Matching::from_pairs(1, {{0, 1}}));
}

TEST_CASE("necklace of the hyperbola") {
    const Polynomial p = from({{1, 0}, {-1, 0}});
    const Necklace nk = build_necklace(p);
    REQUIRE(nk.critical_thetas == std::vector<double>{0.0});
    REQUIRE(nk.beads.size() == 1);
    CHECK(nk.beads[0].start == 0.0);
    CHECK(nk.beads[0].end == doctest::Approx(kPi));
    CHECK(nk.beads[0].matching == Matching::from_pairs(2, {{0, 3}, {1, 2}}));
    CHECK(sweep_check(p, nk, 64).empty());
}

TEST_CASE("multiple roots make the necklace undefined") {
    CHECK_THROWS_AS(build_necklace(from({{1, 0}, {1, 0}, {-1, 0}})), NumericalError);
}

TEST_CASE("beads of a seeded instance") {
    Xorshift64Star rng(4);
    const Polynomial p = poly_from_roots(random_unit_roots(rng, 4));
    const Necklace nk = build_necklace(p);
    CHECK(nk.beads.size() == nk.critical_thetas.size());
    for (std::size_t i = 0; i < nk.beads.size(); ++i) {
        CHECK(nk.beads[i].start == nk.critical_thetas[i]);
        CHECK(nk.beads[i].matching.is_noncrossing());
        // Nine interior samples agree with the bead.
        const Bead& b = nk.beads[i];
        for (int s = 1; s <= 9; ++s) {
            const double theta = b.start + (b.end - b.start) * s / 10.0;
            CHECK(matching(p, theta) == b.matching);
        }
    }
    CHECK(nk.beads.back().end == doctest::Approx(nk.critical_thetas.front() + kPi));
}

TEST_CASE("the wrap bead links back to the first under a shift of one") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        Xorshift64Star rng(seed);
        const Polynomial p = poly_from_roots(random_unit_roots(rng, rng.uniform_int(2, 6)));
        const Necklace nk = build_necklace(p);
        const Bead& last = nk.beads.back();
        // A θ inside the wrap bead but past π, and the same θ reduced mod π.
        const double theta = 0.5 * (std::max(last.start, kPi) + last.end);
        if (theta <= kPi || theta >= last.end) continue;
        CHECK(matching(p, theta - kPi) == last.matching.relabeled(-1));
    }
}

TEST_CASE("debug sweep finds no changes inside beads") {
    for (std::uint64_t seed = 40; seed < 46; ++seed) {
        Xorshift64Star rng(seed);
        const Polynomial p = poly_from_roots(random_unit_roots(rng, rng.uniform_int(2, 6)));
        const Necklace nk = build_necklace(p);
        CHECK(sweep_check(p, nk, 64).empty());
    }
}

}
