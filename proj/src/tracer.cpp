#include "hcurve/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hcurve/error.hpp"
#include "hcurve/kernels.hpp"
#include "hcurve/necklace.hpp"

namespace hcurve {

namespace {

struct Rotated {
    Complex value;
    Complex slope;
};

Rotated rotated_eval(const Polynomial& p, Complex rot, Complex z) {
    const auto [v, d] = eval_with_derivative(p, z);
    return {rot * v, rot * d};
}

// Gradient of Im F as a complex number: (Im F', Re F').
Complex gradient(Complex slope) { return {slope.imag(), slope.real()}; }

// Newton projection of z onto Im(rot P) = 0 along the gradient.
Complex project(const Polynomial& p, Complex rot, Complex z, double max_move, int iterations = 8) {
    const Complex start = z;
    for (int it = 0; it < iterations; ++it) {
        const Rotated f = rotated_eval(p, rot, z);
        const double g2 = std::norm(f.slope);
        if (g2 == 0.0) break;
        const Complex step = f.value.imag() * gradient(f.slope) / g2;
        z -= step;
        if (std::abs(z - start) > max_move) return start;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) break;
    }
    return z;
}

} // namespace

void Window::validate() const {
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw DomainError("window half-width must be positive");
    if (cells < 8) throw DomainError("window needs at least 8 cells per axis");
}

std::pair<int, double> AsymptoteFan::nearest(double angle) const {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < static_cast<int>(angles.size()); ++k) {
        const double d = angular_distance(angle, angles[static_cast<std::size_t>(k)],
                                          AngleModulus::TwoPi);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return {best, best_d};
}

AsymptoteFan asymptote_fan(int n, double theta) {
    if (n < 1) throw DomainError("asymptote fan needs n >= 1");
    AsymptoteFan fan;
    fan.n = n;
    fan.theta = theta;
    for (int k = 0; k < 2 * n; ++k)
        fan.angles.push_back(normalize_angle((kPi * k + theta) / n, AngleModulus::TwoPi));
    return fan;
}

Matching Matching::from_pairs(int n, const std::vector<std::array<int, 2>>& pairs) {
    std::vector<int> partner(static_cast<std::size_t>(2 * n), -1);
    for (const auto& [a, b] : pairs) {
        if (a < 0 || b < 0 || a >= 2 * n || b >= 2 * n)
            throw DomainError("matching index out of range");
        partner[static_cast<std::size_t>(a)] = b;
        partner[static_cast<std::size_t>(b)] = a;
    }
    return Matching(std::move(partner));
}

std::vector<std::array<int, 2>> Matching::pairs() const {
    std::vector<std::array<int, 2>> out;
    for (int k = 0; k < size(); ++k)
        if ((*this)[k] > k) out.push_back({k, (*this)[k]});
    return out;
}

bool Matching::is_perfect() const {
    if (partner_.empty() || partner_.size() % 2 != 0) return false;
    for (int k = 0; k < size(); ++k) {
        const int j = (*this)[k];
        if (j < 0 || j >= size() || j == k || (*this)[j] != k) return false;
    }
    return true;
}

bool Matching::is_noncrossing() const {
    const auto ps = pairs();
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            const auto [a, b] = ps[i];
            const auto [c, d] = ps[j];
            if ((a < c && c < b && b < d) || (c < a && a < d && d < b)) return false;
        }
    return true;
}

Matching Matching::relabeled(int s) const {
    const int m = size();
    std::vector<int> out(partner_.size());
    for (int k = 0; k < m; ++k) {
        const int src = ((k + s) % m + m) % m;
        out[static_cast<std::size_t>(k)] = (((*this)[src] - s) % m + m) % m;
    }
    return Matching(std::move(out));
}

double implicit_value(const Polynomial& p, double theta, Complex z) {
    return (std::polar(1.0, -theta) * eval(p, z)).imag();
}

std::vector<Polyline> trace(const Polynomial& p, double theta, const Window& window) {
    window.validate();
    const int C = window.cells;
    const int M = C + 1;
    const double h = window.cell_size();
    const double x0 = window.center.real() - window.half_width;
    const double y0 = window.center.imag() - window.half_width;
    const Complex rot = std::polar(1.0, -theta);

    std::vector<double> values(static_cast<std::size_t>(M) * M);
    {
        const auto coeffs = kernels::SplitCoeffs::from(p, rot);
        const auto& k = kernels::active_kernels();
        std::vector<double> xs(static_cast<std::size_t>(M)), ys(xs.size()), re(xs.size());
        for (int i = 0; i < M; ++i) xs[static_cast<std::size_t>(i)] = x0 + i * h;
        for (int j = 0; j < M; ++j) {
            std::fill(ys.begin(), ys.end(), y0 + j * h);
            std::span<double> row(values.data() + static_cast<std::size_t>(j) * M,
                                  static_cast<std::size_t>(M));
            k.horner(coeffs, xs, ys, re, row);
        }
    }
    auto v = [&](int i, int j) { return values[static_cast<std::size_t>(j) * M + i]; };
    auto pos = [](double x) { return x >= 0.0; };

    const int horizontal = M * C;
    const int edge_count = horizontal + C * M;
    auto h_edge = [&](int i, int j) { return j * C + i; };
    auto v_edge = [&](int i, int j) { return horizontal + j * M + i; };

    auto edge_point = [&](int e) -> Complex {
        if (e < horizontal) {
            const int j = e / C;
            const int i = e % C;
            const double a = v(i, j);
            const double b = v(i + 1, j);
            const double t = a / (a - b);
            return {x0 + (i + t) * h, y0 + j * h};
        }
        const int r = e - horizontal;
        const int j = r / M;
        const int i = r % M;
        const double a = v(i, j);
        const double b = v(i, j + 1);
        const double t = a / (a - b);
        return {x0 + i * h, y0 + (j + t) * h};
    };

    std::vector<std::array<int, 2>> adj(static_cast<std::size_t>(edge_count), {-1, -1});
    auto link = [&](int a, int b) {
        auto attach = [&](int from, int to) {
            auto& slot = adj[static_cast<std::size_t>(from)];
            (slot[0] < 0 ? slot[0] : slot[1]) = to;
        };
        attach(a, b);
        attach(b, a);
    };

    for (int j = 0; j < C; ++j) {
        for (int i = 0; i < C; ++i) {
            const bool bl = pos(v(i, j));
            const bool br = pos(v(i + 1, j));
            const bool tr = pos(v(i + 1, j + 1));
            const bool tl = pos(v(i, j + 1));
            const int bottom = h_edge(i, j);
            const int right = v_edge(i + 1, j);
            const int top = h_edge(i, j + 1);
            const int left = v_edge(i, j);
            int crossed[4];
            int count = 0;
            if (bl != br) crossed[count++] = bottom;
            if (br != tr) crossed[count++] = right;
            if (tl != tr) crossed[count++] = top;
            if (bl != tl) crossed[count++] = left;
            if (count == 2) {
                link(crossed[0], crossed[1]);
            } else if (count == 4) {
                const Complex mid{x0 + (i + 0.5) * h, y0 + (j + 0.5) * h};
                const bool centre = pos((rot * eval(p, mid)).imag());
                if (centre == bl) {
                    link(bottom, right);
                    link(left, top);
                } else {
                    link(left, bottom);
                    link(right, top);
                }
            }
        }
    }

    const double diagonal = h * std::sqrt(2.0);
    std::vector<bool> visited(static_cast<std::size_t>(edge_count), false);
    auto degree = [&](int e) {
        const auto& s = adj[static_cast<std::size_t>(e)];
        return (s[0] >= 0) + (s[1] >= 0);
    };
    auto walk = [&](int start) {
        Polyline line;
        int prev = -1;
        int cur = start;
        while (true) {
            visited[static_cast<std::size_t>(cur)] = true;
            line.points.push_back(project(p, rot, edge_point(cur), diagonal));
            const auto& s = adj[static_cast<std::size_t>(cur)];
            const int next = s[0] != prev ? s[0] : s[1];
            if (next < 0) break;
            if (next == start) {
                line.closed = true;
                break;
            }
            if (visited[static_cast<std::size_t>(next)]) break;
            prev = cur;
            cur = next;
        }
        return line;
    };

    std::vector<Polyline> out;
    for (int e = 0; e < edge_count; ++e)
        if (!visited[static_cast<std::size_t>(e)] && degree(e) == 1) out.push_back(walk(e));
    for (int e = 0; e < edge_count; ++e)
        if (!visited[static_cast<std::size_t>(e)] && degree(e) == 2) out.push_back(walk(e));
    return out;
}

namespace {

bool near_boundary(const Window& w, Complex z, double margin) {
    const Complex d = z - w.center;
    return std::max(std::abs(d.real()), std::abs(d.imag())) >= w.half_width - margin;
}

} // namespace

std::vector<Polyline> merge_polylines(std::vector<Polyline> lines, const Window& window,
                                      double max_gap) {
    const double margin = 2.0 * window.cell_size();
    while (true) {
        // (distance, line a, end of a, line b, end of b); end 0 = front, 1 = back
        double best = max_gap;
        int la = -1, ea = 0, lb = -1, eb = 0;
        for (int i = 0; i < static_cast<int>(lines.size()); ++i) {
            const auto& A = lines[static_cast<std::size_t>(i)];
            if (A.closed || A.points.empty()) continue;
            for (int a_end = 0; a_end < 2; ++a_end) {
                const Complex pa = a_end == 0 ? A.points.front() : A.points.back();
                if (near_boundary(window, pa, margin)) continue;
                for (int j = i; j < static_cast<int>(lines.size()); ++j) {
                    const auto& B = lines[static_cast<std::size_t>(j)];
                    if (B.closed || B.points.empty()) continue;
                    for (int b_end = 0; b_end < 2; ++b_end) {
                        if (j == i && b_end <= a_end) continue;
                        const Complex pb = b_end == 0 ? B.points.front() : B.points.back();
                        if (near_boundary(window, pb, margin)) continue;
                        const double d = std::abs(pa - pb);
                        if (d <= best) {
                            best = d;
                            la = i;
                            ea = a_end;
                            lb = j;
                            eb = b_end;
                        }
                    }
                }
            }
        }
        if (la < 0) break;
        auto& A = lines[static_cast<std::size_t>(la)];
        if (la == lb) {
            A.closed = true;
            continue;
        }
        auto B = std::move(lines[static_cast<std::size_t>(lb)]);
        lines.erase(lines.begin() + lb);
        auto& A2 = lines[static_cast<std::size_t>(la)];
        // Orient A so that its joined end is the back, B so that its joined end is the front.
        if (ea == 0) std::reverse(A2.points.begin(), A2.points.end());
        if (eb == 1) std::reverse(B.points.begin(), B.points.end());
        A2.points.insert(A2.points.end(), B.points.begin(), B.points.end());
    }
    return lines;
}

double asymptote_validity_radius(const Polynomial& p) {
    const int n = p.degree();
    double bound = 0.0;
    if (!p.factors().empty()) {
        for (const Complex& z : p.factors()) bound = std::max(bound, std::abs(z));
    } else {
        // Cauchy bound on the root moduli.
        const double lead = std::abs(p.coeffs().back());
        for (int k = 0; k < n; ++k)
            bound = std::max(bound, std::abs(p.coeffs()[static_cast<std::size_t>(k)]) / lead);
        bound += 1.0;
    }
    return 2.0 * n * (1.0 + bound);
}

Complex root_centroid(const Polynomial& p) {
    const int n = p.degree();
    if (n < 1) throw DomainError("centroid needs degree >= 1");
    return -p.coeffs()[static_cast<std::size_t>(n - 1)] /
           (static_cast<double>(n) * p.coeffs().back());
}

std::vector<CurveComponent> components(const Polynomial& p, double theta, const Window& window,
                                       const AsymptoteFan& fan) {
    const double diagonal = window.cell_size() * std::sqrt(2.0);
    auto lines = merge_polylines(trace(p, theta, window), window, 2.0 * diagonal);
    const Complex centre = root_centroid(p);
    const double margin = 2.0 * window.cell_size();

    std::vector<CurveComponent> out;
    for (auto& line : lines) {
        CurveComponent c;
        c.polyline = std::move(line);
        if (!c.polyline.closed) {
            const Complex a = c.polyline.points.front();
            const Complex b = c.polyline.points.back();
            if (near_boundary(window, a, margin) && near_boundary(window, b, margin)) {
                const auto [ka, da] = fan.nearest(arg(a - centre));
                const auto [kb, db] = fan.nearest(arg(b - centre));
                if (da <= fan.half_gap() && db <= fan.half_gap() && ka != kb)
                    c.ends = std::array<int, 2>{std::min(ka, kb), std::max(ka, kb)};
                else
                    c.ambiguous = true;
            } else {
                c.ambiguous = true;
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

Matching matching_from_components(const std::vector<CurveComponent>& comps, int n) {
    std::vector<int> partner(static_cast<std::size_t>(2 * n), -1);
    for (const auto& c : comps) {
        if (!c.ends) continue;
        const auto [a, b] = *c.ends;
        if (partner[static_cast<std::size_t>(a)] >= 0 || partner[static_cast<std::size_t>(b)] >= 0)
            throw NumericalError("fan index claimed by two components");
        partner[static_cast<std::size_t>(a)] = b;
        partner[static_cast<std::size_t>(b)] = a;
    }
    Matching m(std::move(partner));
    if (!m.is_perfect()) throw NumericalError("components do not induce a perfect matching");
    return m;
}

namespace {

class Follower {
public:
    Follower(const Polynomial& p, double theta, Complex centre, double radius,
             const ContinuationOptions& options)
        : p_(p), dp_(derivative(p)), rot_(std::polar(1.0, -theta)), centre_(centre),
          radius_(radius), options_(options) {}

    double value(Complex z) const { return (rot_ * eval(p_, z)).imag(); }

    // Point on |z - c| = R where the curve enters along asymptote k.
    Complex entry(double direction, double half_gap) const {
        auto h = [&](double phi) { return value(centre_ + std::polar(radius_, phi)); };
        double a = direction - half_gap;
        double b = direction + half_gap;
        double ha = h(a);
        const double hb = h(b);
        if ((ha < 0.0) == (hb < 0.0))
            throw NumericalError("no curve crossing near asymptote; radius too small");
        for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
            const double m = 0.5 * (a + b);
            const double hm = h(m);
            if ((hm < 0.0) == (ha < 0.0)) {
                a = m;
                ha = hm;
            } else {
                b = m;
            }
        }
        const Complex z = centre_ + std::polar(radius_, 0.5 * (a + b));
        return project(p_, rot_, z, 1e-3 * radius_);
    }

    // Follows the curve from a point on the circle until it leaves the disc.
    Polyline follow(Complex start) const {
        Polyline path;
        path.points.push_back(start);
        const double h_max = options_.initial_step * radius_;
        const double h_min = options_.min_step * radius_;
        double step = h_max;
        Complex z = start;
        Complex t = tangent(z);
        if ((t * std::conj(centre_ - z)).real() < 0.0) t = -t;
        bool inside = false;
        for (int n = 0; n < options_.max_steps; ++n) {
            // |P'| / |P''| estimates the distance to the nearest critical point,
            // which bounds how close another branch can pass.
            step = std::max(std::min(step, 0.25 * local_scale(z)), h_min);
            const Complex predicted = z + step * t;
            Complex w;
            Complex t_new;
            if (correct(predicted, step, w) && turn_ok(t, w, t_new)) {
                z = w;
                t = t_new;
                path.points.push_back(z);
                step = std::min(step * 1.5, h_max);
                const double r = std::abs(z - centre_);
                if (r < radius_ * (1.0 - 1e-9)) inside = true;
                if (inside && r >= radius_) return path;
                continue;
            }
            step *= 0.5;
            if (step < h_min) {
                std::ostringstream msg;
                msg << "corrector failed near (" << z.real() << ", " << z.imag()
                    << "); non-generic theta or radius too small";
                throw NumericalError(msg.str());
            }
        }
        throw NumericalError("continuation step limit reached");
    }

    Complex tangent(Complex z) const {
        const Complex s = rot_ * eval_with_derivative(p_, z).second;
        const double len = std::abs(s);
        if (len == 0.0) return {0.0, 0.0};
        return std::conj(s) / len;
    }

private:
    double local_scale(Complex z) const {
        const auto [d1, d2] = eval_with_derivative(dp_, z);
        const double a2 = std::abs(d2);
        return a2 == 0.0 ? std::numeric_limits<double>::infinity() : std::abs(d1) / a2;
    }

    bool correct(Complex predicted, double step, Complex& out) const {
        Complex w = predicted;
        for (int it = 0; it < 10; ++it) {
            const Rotated f = rotated_eval(p_, rot_, w);
            const double g2 = std::norm(f.slope);
            if (g2 == 0.0) return false;
            const Complex delta = f.value.imag() * gradient(f.slope) / g2;
            w -= delta;
            if (std::abs(w - predicted) > 0.25 * step) return false;
            if (std::abs(delta) <= 1e-13 * radius_) {
                out = w;
                return true;
            }
        }
        return false;
    }

    bool turn_ok(Complex t_old, Complex w, Complex& t_new) const {
        t_new = tangent(w);
        if (t_new == Complex{0.0, 0.0}) return false;
        double c = (t_new * std::conj(t_old)).real();
        if (c < 0.0) {
            t_new = -t_new;
            c = -c;
        }
        return c >= 0.866;  // at most 30 degrees per step
    }

    const Polynomial& p_;
    Polynomial dp_;
    Complex rot_;
    Complex centre_;
    double radius_;
    const ContinuationOptions& options_;
};

} // namespace

ContinuationResult trace_matching(const Polynomial& p, double theta,
                                  const ContinuationOptions& options) {
    const int n = p.degree();
    if (n < 1) throw DomainError("matching needs degree >= 1");
    const double minimum = asymptote_validity_radius(p);
    const double radius = options.radius > 0.0 ? options.radius : minimum;
    if (radius < minimum) throw DomainError("radius below the asymptote validity radius");

    if (n >= 2) {
        const CriticalThetas crit = critical_thetas(p);
        if (!crit.multiple_roots.empty())
            throw NumericalError("non-generic: polynomial has a multiple root");
        for (double c : crit.thetas) {
            if (angular_distance(theta, c, AngleModulus::Pi) < options.guard) {
                std::ostringstream msg;
                msg.precision(17);
                msg << "non-generic: theta within " << options.guard << " of critical value "
                    << c;
                throw NumericalError(msg.str());
            }
        }
    }

    const AsymptoteFan fan = asymptote_fan(n, theta);
    const Follower follower(p, theta, root_centroid(p), radius, options);
    const Complex centre = root_centroid(p);

    std::vector<int> partner(static_cast<std::size_t>(2 * n), -1);
    std::vector<Polyline> paths(static_cast<std::size_t>(2 * n));
    for (int k = 0; k < 2 * n; ++k) {
        const Complex start = follower.entry((kPi * k + theta) / n, fan.half_gap());
        Polyline path = follower.follow(start);
        const auto [exit_index, distance] = fan.nearest(arg(path.points.back() - centre));
        if (distance > fan.half_gap()) throw NumericalError("curve left the disc between asymptotes");
        partner[static_cast<std::size_t>(k)] = exit_index;
        paths[static_cast<std::size_t>(k)] = std::move(path);
    }

    Matching m(partner);
    if (!m.is_perfect()) {
        std::ostringstream msg;
        msg << "inconsistent pairing (non-generic or radius too small):";
        for (int k = 0; k < 2 * n; ++k) msg << ' ' << k << "->" << partner[static_cast<std::size_t>(k)];
        throw NumericalError(msg.str());
    }

    ContinuationResult result;
    result.matching = m;
    for (int k = 0; k < 2 * n; ++k)
        if (m[k] > k) result.paths.push_back(std::move(paths[static_cast<std::size_t>(k)]));
    return result;
}

Matching matching(const Polynomial& p, double theta, double radius) {
    ContinuationOptions options;
    options.radius = radius;
    return trace_matching(p, theta, options).matching;
}

} // namespace hcurve
