#include "hcurve/circle_gon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <tuple>

#include "hcurve/error.hpp"
#include "hcurve/kernels.hpp"

namespace hcurve {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// g(t) = Im(e^{-iθ} P(e^{it})) and its t-derivatives. Values use the
// product of linear factors when the polynomial carries its roots; derivatives
// and rounding bounds use the coefficients.
class CircleFunction {
public:
    CircleFunction(const Polynomial& p, double theta)
        : n_(p.degree()), rot_(std::polar(1.0, -theta)), factors_(p.factors()) {
        for (const Complex& a : p.coeffs()) b_.push_back(rot_ * a);
        noise_ = 4.0 * (n_ + 1) * kEps * p.coefficient_norm1();
    }

    double value(double t) const {
        const Complex w = std::polar(1.0, t);
        if (!factors_.empty()) {
            Complex acc = rot_;
            for (const Complex& z : factors_) acc *= w - z;
            return acc.imag();
        }
        Complex acc = b_.back();
        for (std::size_t k = b_.size() - 1; k-- > 0;) acc = acc * w + b_[k];
        return acc.imag();
    }

    // d^m/dt^m g = Im Σ b_k (ik)^m e^{ikt}
    double derivative(double t, int order) const {
        static constexpr Complex kPowI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        const Complex im = kPowI[order % 4];
        const Complex w = std::polar(1.0, t);
        Complex acc{0.0, 0.0};
        for (std::size_t k = b_.size(); k-- > 0;)
            acc = acc * w + b_[k] * std::pow(static_cast<double>(k), order);
        return (im * acc).imag();
    }

    // Rounding level of derivative(t, order) on the circle.
    double noise(int order = 0) const {
        if (order == 0) return noise_;
        double s = 0.0;
        for (std::size_t k = 0; k < b_.size(); ++k)
            s += std::abs(b_[k]) * std::pow(static_cast<double>(k), order);
        return 4.0 * (n_ + 1) * kEps * s;
    }

    int degree() const { return n_; }

private:
    int n_;
    Complex rot_;
    std::vector<Complex> b_;
    std::vector<Complex> factors_;
    double noise_ = 0.0;
};

template <class Fn>
double bisect(Fn&& fn, double a, double b, double fa, double width) {
    while (b - a > width) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = fn(m);
        if (fm == 0.0) return m;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

double polish_simple(const CircleFunction& g, double t) {
    double best = std::abs(g.value(t));
    for (int it = 0; it < 3 && best > 0.0; ++it) {
        const double d = g.derivative(t, 1);
        if (d == 0.0) break;
        const double next = t - g.value(t) / d;
        const double v = std::abs(g.value(next));
        if (!(v < best) || std::abs(next - t) > 1e-9) break;
        t = next;
        best = v;
    }
    return t;
}

// Half-width of the interval around t on which |g| stays at rounding level.
double uncertainty_radius(const CircleFunction& g, double t) {
    const double threshold = 4.0 * g.noise();
    double r = 1e-15;
    while (r < 1e-3 && (std::abs(g.value(t + r)) <= threshold ||
                        std::abs(g.value(t - r)) <= threshold))
        r *= 2.0;
    return r;
}

struct RawZero {
    double angle;
    double radius;
};

int cluster_order(const CircleFunction& g, double t, double radius) {
    int m = 1;
    const int cap = 2 * g.degree();
    while (m < cap) {
        const double dm = std::abs(g.derivative(t, m));
        const double next = std::abs(g.derivative(t, m + 1));
        if (dm <= 4.0 * radius * next + g.noise(m))
            ++m;
        else
            break;
    }
    return m;
}

// Newton on g^{(order-1)}, whose zero is simple at a zero of g of this order.
double refine_cluster(const CircleFunction& g, double t, int order, double radius) {
    const double start = t;
    for (int it = 0; it < 30; ++it) {
        const double v = g.derivative(t, order - 1);
        const double d = g.derivative(t, order);
        if (d == 0.0 || v == 0.0) break;
        const double step = v / d;
        t -= step;
        if (std::abs(t - start) > 4.0 * radius + 1e-12) return start;
        if (std::abs(step) <= 4.0 * kEps * (1.0 + std::abs(t))) break;
    }
    return t;
}

struct Sample {
    double t;
    double g;
    double slope;
};

// Recursive isolation of zeros on a sample interval. Intervals are dropped
// when a second-order Taylor bound excludes a zero, solved by bisection when
// g is provably monotone, and otherwise subdivided down to kMaxDepth, where
// sign changes and interior minima of |g| are examined directly.
struct Scanner {
    static constexpr int kMaxDepth = 6;
    static constexpr int kSplit = 8;

    const CircleFunction& g;
    double curvature;  // bound on |g''|
    double floor;      // |g| at or below this counts as zero
    double slope_noise;
    double width;
    std::vector<double> raw;

    static int sign(double v) { return (v > 0.0) - (v < 0.0); }

    // |g| stays positive on [from, from + h] given value and slope at from.
    bool clear_of_zero(double value, double slope, double h) const {
        const double end = value + slope * h;
        if (sign(end) != sign(value) || value == 0.0) return false;
        return std::min(std::abs(value), std::abs(end)) > 0.5 * curvature * h * h + floor;
    }

    void interval(const Sample& a, const Sample& b, int depth) {
        const double w = b.t - a.t;
        const int sa = sign(a.g);
        const int sb = sign(b.g);
        if (sa == 0) raw.push_back(a.t);
        if (sa != 0 && sb != 0 && clear_of_zero(a.g, a.slope, 0.5 * w) &&
            clear_of_zero(b.g, -b.slope, 0.5 * w))
            return;
        if (std::min(std::abs(a.slope), std::abs(b.slope)) > curvature * w + slope_noise) {
            if (sa * sb < 0) raw.push_back(simple_zero(a, b));
            return;
        }
        if (depth < kMaxDepth) {
            Sample left = a;
            for (int i = 1; i <= kSplit; ++i) {
                Sample right = b;
                if (i < kSplit) {
                    const double t = a.t + w * i / kSplit;
                    right = {t, g.value(t), g.derivative(t, 1)};
                }
                interval(left, right, depth + 1);
                left = right;
            }
            return;
        }
        leaf(a, b);
    }

    double simple_zero(const Sample& a, const Sample& b) const {
        auto value = [&](double t) { return g.value(t); };
        return polish_simple(g, bisect(value, a.t, b.t, a.g, width));
    }

    void leaf(const Sample& a, const Sample& b) {
        const int sa = sign(a.g);
        const int sb = sign(b.g);
        if (sa == 0 || sb == 0) return;
        if (sa * sb < 0) {
            raw.push_back(simple_zero(a, b));
            return;
        }
        // Same sign at both ends: look for an interior minimum of |g|.
        if (!(a.slope * sa < 0.0) || !(b.slope * sb >= 0.0)) return;
        auto slope = [&](double t) { return g.derivative(t, 1); };
        const double te = bisect(slope, a.t, b.t, a.slope, width);
        const double ge = g.value(te);
        if (std::abs(ge) <= floor) {
            raw.push_back(te);
        } else if (sign(ge) != sa) {
            raw.push_back(simple_zero(a, {te, ge, 0.0}));
            raw.push_back(simple_zero({te, ge, 0.0}, b));
        }
    }
};

} // namespace

std::vector<double> NGon::angles() const {
    std::vector<double> out;
    out.reserve(vertices.size());
    for (int k = 0; k < n; ++k)
        out.push_back(normalize_angle(omega.value() + kTwoPi * k / n, AngleModulus::TwoPi));
    return out;
}

void require_on_unit_circle(const RootMultiset& roots, double tol) {
    if (roots.empty()) throw DomainError("empty root set");
    for (std::size_t i = 0; i < roots.entries().size(); ++i) {
        const Complex z = roots.entries()[i].root;
        if (std::abs(std::abs(z) - 1.0) > tol) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "root " << i << " (" << z.real() << ", " << z.imag()
                << ") is not on the unit circle: | |z| - 1 | = " << std::abs(std::abs(z) - 1.0);
            throw DomainError(msg.str());
        }
    }
}

Angle omega(const RootMultiset& roots, double theta) {
    require_on_unit_circle(roots);
    double sum = 0.0;
    for (const auto& e : roots.entries()) sum += e.multiplicity * arg(e.root);
    const double n = roots.degree();
    return Angle::mod_2pi((2.0 * theta - sum) / n - kPi);
}

NGon gon_vertices(const RootMultiset& roots, double theta) {
    NGon gon;
    gon.omega = omega(roots, theta);
    gon.n = roots.degree();
    gon.vertices.reserve(static_cast<std::size_t>(gon.n));
    for (double a : gon.angles()) gon.vertices.push_back(std::polar(1.0, a));
    return gon;
}

int CircleZeroSet::total_multiplicity() const {
    int s = 0;
    for (const auto& z : zeros) s += z.multiplicity;
    return s;
}

std::vector<double> CircleZeroSet::expanded() const {
    std::vector<double> out;
    for (const auto& z : zeros)
        for (int m = 0; m < z.multiplicity; ++m) out.push_back(z.angle);
    return out;
}

CircleZeroSet circle_zeros(const Polynomial& p, double theta, int samples, double width) {
    return circle_zeros(p, theta, CircleZeroOptions{samples, width});
}

CircleZeroSet circle_zeros(const Polynomial& p, double theta, const CircleZeroOptions& options) {
    const int n = p.degree();
    if (n < 1) throw DomainError("circle_zeros needs degree >= 1");
    const int count = options.samples > 0 ? options.samples : std::max(4096, 64 * n);
    if (count < 16 * n) throw DomainError("circle_zeros needs at least 16 n samples");

    const CircleFunction g(p, theta);
    const auto N = static_cast<std::size_t>(count);

    std::vector<double> xs(N), ys(N), re(N), gv(N), dre(N), dim(N), gp(N);
    for (std::size_t j = 0; j < N; ++j) {
        const double t = kTwoPi * static_cast<double>(j) / count;
        xs[j] = std::cos(t);
        ys[j] = std::sin(t);
    }
    const auto coeffs = kernels::SplitCoeffs::from(p, std::polar(1.0, -theta));
    kernels::active_kernels().horner_with_derivative(coeffs, xs, ys, re, gv, dre, dim);
    // g'(t) = Im(i w F'(w)) = Re(w F'(w))
    for (std::size_t j = 0; j < N; ++j) gp[j] = xs[j] * dre[j] - ys[j] * dim[j];

    const double floor = 64.0 * g.noise();
    if (std::all_of(gv.begin(), gv.end(), [&](double v) { return std::abs(v) <= floor; }))
        throw NumericalError("degenerate: circle contained in curve");

    // Bernstein: |g''| <= n^2 max|g| for a trigonometric polynomial of
    // degree n, and the sampled maximum is within 1/(1 - πn/N) of the true one.
    const double gmax = *std::max_element(gv.begin(), gv.end(), [](double x, double y) {
        return std::abs(x) < std::abs(y);
    });
    const double curvature_bound = static_cast<double>(n) * n * std::abs(gmax) /
                                   (1.0 - kPi * n / static_cast<double>(count));

    Scanner scan{g, curvature_bound, floor, g.noise(1), options.width, {}};
    for (std::size_t j = 0; j < N; ++j) {
        const std::size_t k = (j + 1) % N;
        const double a = kTwoPi * static_cast<double>(j) / count;
        const double b = kTwoPi * static_cast<double>(j + 1) / count;
        scan.interval({a, gv[j], gp[j]}, {b, gv[k], gp[k]}, 0);
    }
    std::vector<double> raw = std::move(scan.raw);

    for (double& t : raw) t = normalize_angle(t, AngleModulus::TwoPi);
    std::sort(raw.begin(), raw.end());

    std::vector<RawZero> pts;
    pts.reserve(raw.size());
    for (double t : raw) pts.push_back({t, uncertainty_radius(g, t)});

    // Group zeros that cannot be told apart.
    std::vector<std::vector<RawZero>> groups;
    for (const RawZero& z : pts) {
        if (!groups.empty()) {
            const RawZero& last = groups.back().back();
            if (z.angle - last.angle <= 2.0 * (z.radius + last.radius) + options.width) {
                groups.back().push_back(z);
                continue;
            }
        }
        groups.push_back({z});
    }
    if (groups.size() > 1) {
        const RawZero& first = groups.front().front();
        const RawZero& last = groups.back().back();
        if (first.angle + kTwoPi - last.angle <=
            2.0 * (first.radius + last.radius) + options.width) {
            for (RawZero z : groups.front()) {
                z.angle += kTwoPi;
                groups.back().push_back(z);
            }
            groups.erase(groups.begin());
        }
    }

    CircleZeroSet out;
    for (const auto& group : groups) {
        const RawZero* best = &group.front();
        double best_value = std::abs(g.value(best->angle));
        double radius = 0.0;
        for (const RawZero& z : group) {
            radius = std::max(radius, z.radius);
            const double v = std::abs(g.value(z.angle));
            if (v < best_value) {
                best = &z;
                best_value = v;
            }
        }
        radius += group.back().angle - group.front().angle;
        double t = best->angle;
        const int order = cluster_order(g, t, radius);
        if (order >= 2) t = refine_cluster(g, t, order, radius);
        t = normalize_angle(t, AngleModulus::TwoPi);
        out.zeros.push_back({t, std::abs(g.value(t)), order});
    }
    std::sort(out.zeros.begin(), out.zeros.end(),
              [](const CircleZero& a, const CircleZero& b) { return a.angle < b.angle; });
    // Refinement can move two clusters onto the same angle.
    std::vector<CircleZero> merged;
    for (const CircleZero& z : out.zeros) {
        if (!merged.empty() && z.angle - merged.back().angle <= options.width) {
            merged.back().multiplicity += z.multiplicity;
            continue;
        }
        merged.push_back(z);
    }
    out.zeros = std::move(merged);
    return out;
}

void match_circular(const std::vector<double>& predicted, const std::vector<double>& found,
                    double tol, VerificationReport& report) {
    struct Candidate {
        double distance;
        std::size_t p;
        std::size_t f;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(predicted.size() * found.size());
    for (std::size_t i = 0; i < predicted.size(); ++i)
        for (std::size_t j = 0; j < found.size(); ++j)
            candidates.push_back(
                {angular_distance(predicted[i], found[j], AngleModulus::TwoPi), i, j});
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.distance, a.p, a.f) < std::tie(b.distance, b.p, b.f);
    });

    std::vector<bool> used_p(predicted.size(), false);
    std::vector<bool> used_f(found.size(), false);
    report.matched_pairs.clear();
    report.max_distance = 0.0;
    for (const Candidate& c : candidates) {
        if (c.distance > tol) break;
        if (used_p[c.p] || used_f[c.f]) continue;
        used_p[c.p] = used_f[c.f] = true;
        report.matched_pairs.push_back({predicted[c.p], found[c.f], c.distance});
        report.max_distance = std::max(report.max_distance, c.distance);
    }
    std::sort(report.matched_pairs.begin(), report.matched_pairs.end(),
              [](const MatchedPair& a, const MatchedPair& b) {
                  return std::tie(a.predicted, a.found) < std::tie(b.predicted, b.found);
              });
    report.unmatched_predicted.clear();
    report.unmatched_found.clear();
    for (std::size_t i = 0; i < predicted.size(); ++i)
        if (!used_p[i]) report.unmatched_predicted.push_back(predicted[i]);
    for (std::size_t j = 0; j < found.size(); ++j)
        if (!used_f[j]) report.unmatched_found.push_back(found[j]);
    report.pass = report.unmatched_predicted.empty() && report.unmatched_found.empty();
}

VerificationReport verify_gon(const RootMultiset& roots, double theta, double tol,
                                      const CircleZeroOptions& options) {
    VerificationReport report;
    report.gon = gon_vertices(roots, theta);
    report.omega = report.gon.omega;
    report.zeros = circle_zeros(poly_from_roots(roots), theta, options);

    for (const auto& e : roots.entries())
        for (int m = 0; m < e.multiplicity; ++m) report.predicted.push_back(arg(e.root));
    for (double a : report.gon.angles()) report.predicted.push_back(a);

    match_circular(report.predicted, report.zeros.expanded(), tol, report);
    return report;
}

Angle theta_placing_root_on_gon(const RootMultiset& roots, std::size_t index, int slot) {
    require_on_unit_circle(roots);
    if (index >= roots.entries().size()) throw DomainError("root index out of range");
    const double n = roots.degree();
    double sum = 0.0;
    for (const auto& e : roots.entries()) sum += e.multiplicity * arg(e.root);
    const double target = arg(roots.entries()[index].root);
    return Angle::mod_pi(0.5 * (n * (target + kPi - kTwoPi * slot / n) + sum));
}

} // namespace hcurve
