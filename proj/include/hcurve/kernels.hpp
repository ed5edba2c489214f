#pragma once

// Batch complex Horner evaluation over many points. The scalar kernels are the
// reference; vector variants perform the same IEEE operations in the same
// order (no fused multiply-add), so every variant is bit-identical to the
// scalar one and results do not depend on the host CPU.

#include <span>
#include <string_view>
#include <vector>

#include "hcurve/polynomial.hpp"

namespace hcurve::kernels {

/// Coefficients in ascending order, split into real and imaginary arrays.
struct SplitCoeffs {
    std::vector<double> re;
    std::vector<double> im;

    /// Coefficients of factor * P.
    static SplitCoeffs from(const Polynomial& p, Complex factor = {1.0, 0.0});
    std::size_t size() const { return re.size(); }
};

/// Evaluates P at (x[i], y[i]) into (out_re[i], out_im[i]).
using HornerFn = void (*)(const SplitCoeffs& c, std::span<const double> x,
                          std::span<const double> y, std::span<double> out_re,
                          std::span<double> out_im);

/// Evaluates P and P' at (x[i], y[i]).
using HornerDerivFn = void (*)(const SplitCoeffs& c, std::span<const double> x,
                               std::span<const double> y, std::span<double> out_re,
                               std::span<double> out_im, std::span<double> d_re,
                               std::span<double> d_im);

struct KernelSet {
    std::string_view name;
    HornerFn horner;
    HornerDerivFn horner_with_derivative;
};

const KernelSet& scalar_kernels();

/// AVX2 kernels, or nullptr when not compiled in or not supported by the CPU.
const KernelSet* avx2_kernels();

/// Best kernels for this machine. Setting HCURVE_KERNELS=scalar in the
/// environment forces the scalar reference.
const KernelSet& active_kernels();

/// Im(e^{-i theta} P(x + i y)) for every point, through active_kernels().
void implicit_values(const Polynomial& p, double theta, std::span<const double> x,
                     std::span<const double> y, std::span<double> out);

} // namespace hcurve::kernels
