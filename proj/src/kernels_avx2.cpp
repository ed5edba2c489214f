#include "hcurve/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)
#include <immintrin.h>
#define HCURVE_HAVE_AVX2 1
#endif

namespace hcurve::kernels {

namespace detail {
void horner_scalar_range(const SplitCoeffs& c, const double* x, const double* y,
                         double* out_re, double* out_im, std::size_t begin, std::size_t end);
void horner_deriv_scalar_range(const SplitCoeffs& c, const double* x, const double* y,
                               double* out_re, double* out_im, double* d_re, double* d_im,
                               std::size_t begin, std::size_t end);
} // namespace detail

#ifdef HCURVE_HAVE_AVX2

namespace {

// Four points per iteration. Separate mul/sub/add keep rounding identical to
// the scalar kernel.
void horner_avx2(const SplitCoeffs& c, std::span<const double> x, std::span<const double> y,
                 std::span<double> out_re, std::span<double> out_im) {
    const std::size_t n = c.size();
    const std::size_t count = x.size();
    const std::size_t vec_end = count - count % 4;
    for (std::size_t i = 0; i < vec_end; i += 4) {
        const __m256d zr = _mm256_loadu_pd(x.data() + i);
        const __m256d zi = _mm256_loadu_pd(y.data() + i);
        __m256d ar = _mm256_set1_pd(c.re[n - 1]);
        __m256d ai = _mm256_set1_pd(c.im[n - 1]);
        for (std::size_t k = n - 1; k-- > 0;) {
            const __m256d tr = _mm256_sub_pd(_mm256_mul_pd(ar, zr), _mm256_mul_pd(ai, zi));
            const __m256d ti = _mm256_add_pd(_mm256_mul_pd(ar, zi), _mm256_mul_pd(ai, zr));
            ar = _mm256_add_pd(tr, _mm256_set1_pd(c.re[k]));
            ai = _mm256_add_pd(ti, _mm256_set1_pd(c.im[k]));
        }
        _mm256_storeu_pd(out_re.data() + i, ar);
        _mm256_storeu_pd(out_im.data() + i, ai);
    }
    detail::horner_scalar_range(c, x.data(), y.data(), out_re.data(), out_im.data(), vec_end,
                                count);
}

void horner_deriv_avx2(const SplitCoeffs& c, std::span<const double> x,
                       std::span<const double> y, std::span<double> out_re,
                       std::span<double> out_im, std::span<double> d_re, std::span<double> d_im) {
    const std::size_t n = c.size();
    const std::size_t count = x.size();
    const std::size_t vec_end = count - count % 4;
    for (std::size_t i = 0; i < vec_end; i += 4) {
        const __m256d zr = _mm256_loadu_pd(x.data() + i);
        const __m256d zi = _mm256_loadu_pd(y.data() + i);
        __m256d ar = _mm256_set1_pd(c.re[n - 1]);
        __m256d ai = _mm256_set1_pd(c.im[n - 1]);
        __m256d sr = _mm256_setzero_pd();
        __m256d si = _mm256_setzero_pd();
        for (std::size_t k = n - 1; k-- > 0;) {
            const __m256d ur = _mm256_sub_pd(_mm256_mul_pd(sr, zr), _mm256_mul_pd(si, zi));
            const __m256d ui = _mm256_add_pd(_mm256_mul_pd(sr, zi), _mm256_mul_pd(si, zr));
            sr = _mm256_add_pd(ur, ar);
            si = _mm256_add_pd(ui, ai);
            const __m256d tr = _mm256_sub_pd(_mm256_mul_pd(ar, zr), _mm256_mul_pd(ai, zi));
            const __m256d ti = _mm256_add_pd(_mm256_mul_pd(ar, zi), _mm256_mul_pd(ai, zr));
            ar = _mm256_add_pd(tr, _mm256_set1_pd(c.re[k]));
            ai = _mm256_add_pd(ti, _mm256_set1_pd(c.im[k]));
        }
        _mm256_storeu_pd(out_re.data() + i, ar);
        _mm256_storeu_pd(out_im.data() + i, ai);
        _mm256_storeu_pd(d_re.data() + i, sr);
        _mm256_storeu_pd(d_im.data() + i, si);
    }
    detail::horner_deriv_scalar_range(c, x.data(), y.data(), out_re.data(), out_im.data(),
                                      d_re.data(), d_im.data(), vec_end, count);
}

} // namespace

const KernelSet* avx2_kernels() {
    static const KernelSet set{"avx2", &horner_avx2, &horner_deriv_avx2};
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &set : nullptr;
}

#else

const KernelSet* avx2_kernels() { return nullptr; }

#endif

} // namespace hcurve::kernels
