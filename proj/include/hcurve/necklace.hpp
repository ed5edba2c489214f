#pragma once

#include <string>
#include <vector>

#include "hcurve/polynomial.hpp"
#include "hcurve/tracer.hpp"

namespace hcurve {

/// Values of θ (mod π) at which the curve passes through a critical point of P.
struct CriticalThetas {
    std::vector<double> thetas;  // sorted, in [0, π), deduplicated within 1e-9
    /// Critical points where |P(c)| <= tol: multiple roots, on the curve for every θ.
    std::vector<Complex> multiple_roots;
};

/// {Arg P(c) mod π : P'(c) = 0, |P(c)| > tol}. Degree 1 gives an empty list.
CriticalThetas critical_thetas(const Polynomial& p, double tol = 1e-10);

struct Bead {
    double start = 0.0;  // open interval (start, end); end may exceed π for the
    double end = 0.0;    // bead that wraps around through θ = π
    Matching matching;
};

struct Necklace {
    std::vector<double> critical_thetas;
    std::vector<Bead> beads;
};

/// Raised when the samples inside one bead disagree.
class TransitionError : public NumericalError {
public:
    TransitionError(const std::string& what, std::vector<Matching> samples)
        : NumericalError(what), samples_(std::move(samples)) {}
    const std::vector<Matching>& samples() const { return samples_; }

private:
    std::vector<Matching> samples_;
};

struct NecklaceOptions {
    double guard = 1e-4;         // minimum distance of a sample from a critical θ
    int samples_per_bead = 3;    // 3 (quarter points) or more, evenly spaced
    double root_tol = 1e-10;
};

/// Beads between cyclically consecutive critical θs. With no critical values
/// the single bead is [0, π). The last bead runs from the largest critical θ
/// to the smallest one plus π; its matching uses the fan at those θ directly.
Necklace build_necklace(const Polynomial& p, const NecklaceOptions& options = {});

struct SweepViolation {
    double theta = 0.0;
    Matching expected;
    Matching found;
};

/// Samples count θ values uniformly in [0, π) and checks each matching against
/// its bead. Samples within the guard of a critical θ are skipped.
std::vector<SweepViolation> sweep_check(const Polynomial& p, const Necklace& necklace,
                                        int count = 64, double guard = 1e-4);

} // namespace hcurve
