#include "hcurve/kernels.hpp"

#include <cassert>
#include <cmath>
#include <cstdlib>

namespace hcurve::kernels {

namespace detail {

// Shared with the vector kernels for their remainder loops.
void horner_scalar_range(const SplitCoeffs& c, const double* x, const double* y,
                         double* out_re, double* out_im, std::size_t begin, std::size_t end) {
    const std::size_t n = c.size();
    for (std::size_t i = begin; i < end; ++i) {
        const double zr = x[i];
        const double zi = y[i];
        double ar = c.re[n - 1];
        double ai = c.im[n - 1];
        for (std::size_t k = n - 1; k-- > 0;) {
            const double tr = ar * zr - ai * zi;
            const double ti = ar * zi + ai * zr;
            ar = tr + c.re[k];
            ai = ti + c.im[k];
        }
        out_re[i] = ar;
        out_im[i] = ai;
    }
}

void horner_deriv_scalar_range(const SplitCoeffs& c, const double* x, const double* y,
                               double* out_re, double* out_im, double* d_re, double* d_im,
                               std::size_t begin, std::size_t end) {
    const std::size_t n = c.size();
    for (std::size_t i = begin; i < end; ++i) {
        const double zr = x[i];
        const double zi = y[i];
        double ar = c.re[n - 1];
        double ai = c.im[n - 1];
        double sr = 0.0;
        double si = 0.0;
        for (std::size_t k = n - 1; k-- > 0;) {
            const double ur = sr * zr - si * zi;
            const double ui = sr * zi + si * zr;
            sr = ur + ar;
            si = ui + ai;
            const double tr = ar * zr - ai * zi;
            const double ti = ar * zi + ai * zr;
            ar = tr + c.re[k];
            ai = ti + c.im[k];
        }
        out_re[i] = ar;
        out_im[i] = ai;
        d_re[i] = sr;
        d_im[i] = si;
    }
}

} // namespace detail

namespace {

void horner(const SplitCoeffs& c, std::span<const double> x, std::span<const double> y,
            std::span<double> out_re, std::span<double> out_im) {
    assert(x.size() == y.size() && out_re.size() >= x.size() && out_im.size() >= x.size());
    detail::horner_scalar_range(c, x.data(), y.data(), out_re.data(), out_im.data(), 0, x.size());
}

void horner_deriv(const SplitCoeffs& c, std::span<const double> x, std::span<const double> y,
                  std::span<double> out_re, std::span<double> out_im, std::span<double> d_re,
                  std::span<double> d_im) {
    assert(x.size() == y.size());
    detail::horner_deriv_scalar_range(c, x.data(), y.data(), out_re.data(), out_im.data(),
                                      d_re.data(), d_im.data(), 0, x.size());
}

} // namespace

SplitCoeffs SplitCoeffs::from(const Polynomial& p, Complex factor) {
    SplitCoeffs s;
    s.re.reserve(p.coeffs().size());
    s.im.reserve(p.coeffs().size());
    for (const Complex& a : p.coeffs()) {
        const Complex b = factor * a;
        s.re.push_back(b.real());
        s.im.push_back(b.imag());
    }
    return s;
}

const KernelSet& scalar_kernels() {
    static const KernelSet set{"scalar", &horner, &horner_deriv};
    return set;
}

const KernelSet& active_kernels() {
    static const KernelSet* chosen = [] {
        const char* env = std::getenv("HCURVE_KERNELS");
        if (env != nullptr && std::string_view(env) == "scalar") return &scalar_kernels();
        if (const KernelSet* v = avx2_kernels()) return v;
        return &scalar_kernels();
    }();
    return *chosen;
}

void implicit_values(const Polynomial& p, double theta, std::span<const double> x,
                     std::span<const double> y, std::span<double> out) {
    const SplitCoeffs c = SplitCoeffs::from(p, std::polar(1.0, -theta));
    std::vector<double> re(x.size());
    active_kernels().horner(c, x, y, re, out);
}

} // namespace hcurve::kernels
