#include "phqm/kernels.hpp"

#if defined(PHQM_HAVE_AVX2_TU) && defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace phqm::kernels::avx2 {
namespace {

// Two complex doubles per 256-bit register, interleaved (re0, im0, re1, im1).
inline __m256d load2(const Complex* p) {
    return _mm256_loadu_pd(reinterpret_cast<const double*>(p));
}

inline double hsum_even(__m256d v) {
    alignas(32) double t[4];
    _mm256_store_pd(t, v);
    return t[0] + t[2];
}

inline double hsum_odd(__m256d v) {
    alignas(32) double t[4];
    _mm256_store_pd(t, v);
    return t[1] + t[3];
}

// Accumulates the two partial products needed by both dot variants:
// direct = (ar*br, ai*bi, ...), swapped = (ar*bi, ai*br, ...).
inline void dot_accumulate(std::span<const Complex> a, std::span<const Complex> b,
                           __m256d& direct, __m256d& swapped, std::size_t& i) {
    direct = _mm256_setzero_pd();
    swapped = _mm256_setzero_pd();
    const std::size_t n = a.size();
    for (i = 0; i + 2 <= n; i += 2) {
        const __m256d va = load2(a.data() + i);
        const __m256d vb = load2(b.data() + i);
        const __m256d vbs = _mm256_permute_pd(vb, 0b0101);
        direct = _mm256_fmadd_pd(va, vb, direct);
        swapped = _mm256_fmadd_pd(va, vbs, swapped);
    }
}

}  // namespace

Complex dotc(std::span<const Complex> a, std::span<const Complex> b) {
    __m256d direct, swapped;
    std::size_t i = 0;
    dot_accumulate(a, b, direct, swapped, i);
    double re = hsum_even(direct) + hsum_odd(direct);
    double im = hsum_even(swapped) - hsum_odd(swapped);
    for (; i < a.size(); ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

Complex dotu(std::span<const Complex> a, std::span<const Complex> b) {
    __m256d direct, swapped;
    std::size_t i = 0;
    dot_accumulate(a, b, direct, swapped, i);
    double re = hsum_even(direct) - hsum_odd(direct);
    double im = hsum_even(swapped) + hsum_odd(swapped);
    for (; i < a.size(); ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br - ai * bi;
        im += ar * bi + ai * br;
    }
    return {re, im};
}

void gemv(std::size_t n, const Complex* a, const Complex* x, Complex* y) {
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = dotu({a + i * n, n}, {x, n});
    }
}

// Row-broadcast formulation: C[i, j:j+2] += A[i,k] * B[k, j:j+2].
// The real and imaginary parts of A[i,k] are kept in separate accumulators
// and combined with a single addsub per output pair.
void gemm(std::size_t n, const Complex* a, const Complex* b, Complex* c) {
    const std::size_t nv = n & ~std::size_t{1};
    for (std::size_t i = 0; i < n; ++i) {
        Complex* crow = c + i * n;
        for (std::size_t j = 0; j < nv; j += 2) {
            __m256d acc_re = _mm256_setzero_pd();
            __m256d acc_im = _mm256_setzero_pd();
            for (std::size_t k = 0; k < n; ++k) {
                const Complex aik = a[i * n + k];
                const __m256d vb = load2(b + k * n + j);
                const __m256d vbs = _mm256_permute_pd(vb, 0b0101);
                acc_re = _mm256_fmadd_pd(_mm256_set1_pd(aik.real()), vb, acc_re);
                acc_im = _mm256_fmadd_pd(_mm256_set1_pd(aik.imag()), vbs, acc_im);
            }
            _mm256_storeu_pd(reinterpret_cast<double*>(crow + j),
                             _mm256_addsub_pd(acc_re, acc_im));
        }
        if (nv < n) {
            double re = 0.0, im = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double ar = a[i * n + k].real(), ai = a[i * n + k].imag();
                const double br = b[k * n + nv].real(), bi = b[k * n + nv].imag();
                re += ar * br - ai * bi;
                im += ar * bi + ai * br;
            }
            crow[nv] = {re, im};
        }
    }
}

}  // namespace phqm::kernels::avx2

#else

// Non-x86 builds: the AVX2 entry points forward to the scalar reference so the
// table stays well-formed. avx2_available() reports false in this case.
namespace phqm::kernels::avx2 {
Complex dotc(std::span<const Complex> a, std::span<const Complex> b) { return scalar::dotc(a, b); }
Complex dotu(std::span<const Complex> a, std::span<const Complex> b) { return scalar::dotu(a, b); }
void gemv(std::size_t n, const Complex* a, const Complex* x, Complex* y) { scalar::gemv(n, a, x, y); }
void gemm(std::size_t n, const Complex* a, const Complex* b, Complex* c) { scalar::gemm(n, a, b, c); }
}  // namespace phqm::kernels::avx2

#endif
