#include "phqm/kernels.hpp"

namespace phqm::kernels::scalar {

Complex dotc(std::span<const Complex> a, std::span<const Complex> b) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

Complex dotu(std::span<const Complex> a, std::span<const Complex> b) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
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

void gemm(std::size_t n, const Complex* a, const Complex* b, Complex* c) {
    for (std::size_t i = 0; i < n * n; ++i) c[i] = Complex{};
    for (std::size_t i = 0; i < n; ++i) {
        Complex* crow = c + i * n;
        for (std::size_t k = 0; k < n; ++k) {
            const double ar = a[i * n + k].real();
            const double ai = a[i * n + k].imag();
            const Complex* brow = b + k * n;
            for (std::size_t j = 0; j < n; ++j) {
                const double br = brow[j].real(), bi = brow[j].imag();
                crow[j] += Complex{ar * br - ai * bi, ar * bi + ai * br};
            }
        }
    }
}

}  // namespace phqm::kernels::scalar
