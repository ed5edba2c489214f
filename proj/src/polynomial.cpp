#include "hcurve/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hcurve {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Running-error style bound on the rounding of Horner at z.
double horner_rounding(const Polynomial& p, Complex z) {
    const double r = std::abs(z);
    double acc = 0.0;
    const auto& a = p.coeffs();
    for (std::size_t k = a.size(); k-- > 0;) acc = acc * r + std::abs(a[k]);
    return 4.0 * static_cast<double>(a.size()) * kEps * acc;
}

} // namespace

RootMultiset::RootMultiset(std::span<const Complex> roots) {
    for (const Complex& z : roots) add(z, 1);
}

RootMultiset::RootMultiset(std::span<const Complex> roots, std::span<const int> multiplicities) {
    if (roots.size() != multiplicities.size())
        throw DomainError("roots and multiplicities differ in length");
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (multiplicities[i] < 1) throw DomainError("multiplicity must be >= 1");
        add(roots[i], multiplicities[i]);
    }
}

RootMultiset RootMultiset::on_unit_circle(std::span<const double> angles) {
    std::vector<Complex> roots;
    roots.reserve(angles.size());
    for (double t : angles) roots.push_back(std::polar(1.0, t));
    return RootMultiset(roots);
}

void RootMultiset::add(Complex z, int multiplicity) {
    if (!finite(z)) throw DomainError("root has non-finite component");
    // Scale follows the entries seen so far together with the new root.
    const double scale = std::max({1.0, max_modulus(), std::abs(z)});
    const double tol = kRootClusterTolerance * scale;
    for (auto& e : entries_) {
        if (std::abs(e.root - z) <= tol) {
            e.multiplicity += multiplicity;
            degree_ += multiplicity;
            return;
        }
    }
    entries_.push_back({z, multiplicity});
    degree_ += multiplicity;
}

std::vector<Complex> RootMultiset::expanded() const {
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(degree_));
    for (const auto& e : entries_)
        for (int m = 0; m < e.multiplicity; ++m) out.push_back(e.root);
    return out;
}

double RootMultiset::max_modulus() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, std::abs(e.root));
    return m;
}

Complex RootMultiset::centroid() const {
    Complex s{0.0, 0.0};
    for (const auto& e : entries_) s += static_cast<double>(e.multiplicity) * e.root;
    return degree_ > 0 ? s / static_cast<double>(degree_) : s;
}

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back({0.0, 0.0});
    for (const Complex& c : coeffs_)
        if (!finite(c)) throw DomainError("coefficient has non-finite component");
}

bool Polynomial::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](Complex c) { return c == Complex{0.0, 0.0}; });
}

double Polynomial::coefficient_norm1() const {
    double s = 0.0;
    for (const Complex& c : coeffs_) s += std::abs(c);
    return s;
}

double Polynomial::max_coefficient() const {
    double m = 0.0;
    for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Polynomial poly_from_roots(const RootMultiset& roots) {
    if (roots.empty()) throw DomainError("cannot build a polynomial from an empty root set");
    std::vector<Complex> c{Complex{1.0, 0.0}};
    const double bound = std::max(1.0, roots.max_modulus());
    double growth = 1.0;
    for (const Complex& z : roots.expanded()) {
        // c <- c * (x - z)
        c.push_back(c.back());
        for (std::size_t k = c.size() - 2; k > 0; --k) c[k] = c[k - 1] - z * c[k];
        c[0] = -z * c[0];
        growth *= bound + std::abs(z);
    }
    c.back() = Complex{1.0, 0.0};
    Polynomial p(std::move(c));
    p.factors_ = roots.expanded();
    p.condition_ = 4.0 * static_cast<double>(roots.degree()) * growth;
    return p;
}

Complex eval(const Polynomial& p, Complex z) {
    const auto& a = p.coeffs();
    Complex acc = a.back();
    for (std::size_t k = a.size() - 1; k-- > 0;) acc = acc * z + a[k];
    return acc;
}

std::pair<Complex, Complex> eval_with_derivative(const Polynomial& p, Complex z) {
    const auto& a = p.coeffs();
    Complex value = a.back();
    Complex slope{0.0, 0.0};
    for (std::size_t k = a.size() - 1; k-- > 0;) {
        slope = slope * z + value;
        value = value * z + a[k];
    }
    return {value, slope};
}

Polynomial derivative(const Polynomial& p) {
    const auto& a = p.coeffs();
    if (a.size() <= 1) return Polynomial{};
    std::vector<Complex> d(a.size() - 1);
    for (std::size_t k = 1; k < a.size(); ++k) d[k - 1] = static_cast<double>(k) * a[k];
    return Polynomial(std::move(d));
}

std::pair<Polynomial, Complex> divide_linear(const Polynomial& p, Complex r) {
    const auto& a = p.coeffs();
    if (a.size() <= 1) return {Polynomial{}, a.front()};
    std::vector<Complex> q(a.size() - 1);
    Complex acc = a.back();
    for (std::size_t k = a.size() - 1; k-- > 0;) {
        q[k] = acc;
        acc = acc * r + a[k];
    }
    return {Polynomial(std::move(q)), acc};
}

std::vector<Complex> polynomial_roots(const Polynomial& p, double tol, int max_iterations) {
    const int m = p.degree();
    if (m < 1) throw DomainError("root finding needs degree >= 1");
    const Complex lead = p.coeffs().back();
    if (lead == Complex{0.0, 0.0}) throw DomainError("leading coefficient is zero");

    std::vector<Complex> a(p.coeffs());
    for (Complex& c : a) c /= lead;
    const Polynomial q(a);
    if (m == 1) return {-a[0]};

    const double scale = q.max_coefficient();

    // Initial guesses on a circle around the root centroid.
    const Complex center = -a[static_cast<std::size_t>(m - 1)] / static_cast<double>(m);
    double radius = std::pow(std::abs(eval(q, center)), 1.0 / m);
    radius = std::max(radius, 1e-3 * (1.0 + std::abs(center)));
    std::vector<Complex> z(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
        z[static_cast<std::size_t>(j)] = center + std::polar(radius, kTwoPi * j / m + 0.7);

    std::vector<double> residual(z.size());
    auto converged = [&](std::size_t i) {
        return residual[i] <= std::max(tol * scale, horner_rounding(q, z[i]));
    };

    for (int it = 0; it < max_iterations; ++it) {
        bool all_done = true;
        double largest_step = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            const auto [value, slope] = eval_with_derivative(q, z[i]);
            residual[i] = std::abs(value);
            if (value == Complex{0.0, 0.0}) continue;
            Complex repulsion{0.0, 0.0};
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != i && z[i] != z[j]) repulsion += 1.0 / (z[i] - z[j]);
            Complex step;
            if (slope == Complex{0.0, 0.0}) {
                step = std::polar(1e-8 * (1.0 + std::abs(z[i])), 0.3 + static_cast<double>(i));
            } else {
                const Complex ratio = value / slope;
                step = ratio / (1.0 - ratio * repulsion);
            }
            if (!finite(step)) continue;
            z[i] -= step;
            largest_step = std::max(largest_step, std::abs(step) / (1.0 + std::abs(z[i])));
        }
        for (std::size_t i = 0; i < z.size(); ++i) {
            residual[i] = std::abs(eval(q, z[i]));
            if (!converged(i)) all_done = false;
        }
        if (all_done) return z;
        if (largest_step <= 4.0 * kEps) break;
    }
    bool all_done = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
        residual[i] = std::abs(eval(q, z[i]));
        all_done = all_done && converged(i);
    }
    if (all_done) return z;

    std::ostringstream msg;
    msg << "root finder did not converge in " << max_iterations << " iterations; worst residual "
        << *std::max_element(residual.begin(), residual.end());
    throw RootFindingError(msg.str(), std::move(z), std::move(residual));
}

std::vector<Complex> critical_points(const Polynomial& p, double tol) {
    if (p.degree() < 2) throw DomainError("critical points need degree >= 2");
    return polynomial_roots(derivative(p), tol);
}

double arg(Complex z) { return normalize_angle(std::arg(z), AngleModulus::TwoPi); }

double arg_diff_unit(double nu, double psi) {
    const double s = std::sin(0.5 * (nu - psi));
    if (std::abs(s) <= kEps) throw DomainError("arg_diff_unit: coincident unit points");
    const double shift = s < 0.0 ? kPi : 0.0;
    return normalize_angle(0.5 * (nu + psi) + 0.5 * kPi + shift, AngleModulus::TwoPi);
}

} // namespace hcurve
