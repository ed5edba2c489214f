#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hcurve/angle.hpp"
#include "hcurve/error.hpp"

namespace hcurve {

using Complex = std::complex<double>;

/// Relative distance below which two input roots are merged into one entry.
inline constexpr double kRootClusterTolerance = 1e-9;

struct RootEntry {
    Complex root;
    int multiplicity = 1;
};

/// Multiset of polynomial roots. Near-coincident inputs (distance at most
/// kRootClusterTolerance * max(1, max |z|)) are merged and their
/// multiplicities added; the first occurrence fixes the stored position.
class RootMultiset {
public:
    RootMultiset() = default;
    explicit RootMultiset(std::span<const Complex> roots);
    RootMultiset(std::span<const Complex> roots, std::span<const int> multiplicities);

    /// Roots e^{i t} for each angle t.
    static RootMultiset on_unit_circle(std::span<const double> angles);

    const std::vector<RootEntry>& entries() const { return entries_; }
    std::size_t distinct() const { return entries_.size(); }
    int degree() const { return degree_; }
    bool empty() const { return entries_.empty(); }

    /// Every root repeated according to its multiplicity.
    std::vector<Complex> expanded() const;

    double max_modulus() const;
    Complex centroid() const;

private:
    void add(Complex z, int multiplicity);

    std::vector<RootEntry> entries_;
    int degree_ = 0;
};

/// Polynomial with complex coefficients in ascending degree order.
class Polynomial {
public:
    Polynomial() : coeffs_{Complex{0.0, 0.0}} {}
    explicit Polynomial(std::vector<Complex> coeffs);

    const std::vector<Complex>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_monic() const { return coeffs_.back() == Complex{1.0, 0.0}; }
    bool is_zero() const;

    /// Bound on |P(z_i)| / machine epsilon for the roots P was built from.
    /// Zero for polynomials not produced by poly_from_roots.
    double condition() const { return condition_; }

    /// Sum of |a_k|, the maximum of |P| on the unit circle up to rounding.
    double coefficient_norm1() const;
    double max_coefficient() const;

    /// Roots with multiplicity when built by poly_from_roots, else empty.
    /// Lets callers evaluate prod (z - z_i) directly where the expanded
    /// coefficients lose relative accuracy near clustered roots.
    const std::vector<Complex>& factors() const { return factors_; }

private:
    friend Polynomial poly_from_roots(const RootMultiset&);

    std::vector<Complex> coeffs_;
    std::vector<Complex> factors_;
    double condition_ = 0.0;
};

/// Monic P(z) = prod (z - z_i), expanded by repeated multiplication.
Polynomial poly_from_roots(const RootMultiset& roots);

/// Horner evaluation.
Complex eval(const Polynomial& p, Complex z);

/// P(z) and P'(z) in a single Horner pass.
std::pair<Complex, Complex> eval_with_derivative(const Polynomial& p, Complex z);

/// Coefficient-wise derivative. A constant input yields the zero polynomial
/// (check with is_zero()).
Polynomial derivative(const Polynomial& p);

/// Quotient and remainder of P / (z - r) by synthetic division.
std::pair<Polynomial, Complex> divide_linear(const Polynomial& p, Complex r);

/// Raised when simultaneous iteration hits its cap; carries the best
/// approximations and their residuals.
class RootFindingError : public NumericalError {
public:
    RootFindingError(const std::string& what, std::vector<Complex> approximations,
                     std::vector<double> residuals)
        : NumericalError(what), approximations_(std::move(approximations)),
          residuals_(std::move(residuals)) {}

    const std::vector<Complex>& approximations() const { return approximations_; }
    const std::vector<double>& residuals() const { return residuals_; }

private:
    std::vector<Complex> approximations_;
    std::vector<double> residuals_;
};

/// Roots of an arbitrary polynomial of degree >= 1 by Aberth-Ehrlich
/// simultaneous iteration. Residuals are checked against
/// tol * max |a_k| (or the rounding level of Horner if larger).
std::vector<Complex> polynomial_roots(const Polynomial& p, double tol = 1e-12,
                                      int max_iterations = 200);

/// The n - 1 roots of P' with multiplicity. Requires degree >= 2.
std::vector<Complex> critical_points(const Polynomial& p, double tol = 1e-12);

/// Arg(e^{i nu} - e^{i psi}) in [0, 2π) from the closed form
/// (nu + psi)/2 + π/2 + π [sin((nu - psi)/2) < 0].
/// Throws DomainError when the two unit points coincide.
double arg_diff_unit(double nu, double psi);

/// Argument in [0, 2π); zero maps to 0.
double arg(Complex z);

} // namespace hcurve
