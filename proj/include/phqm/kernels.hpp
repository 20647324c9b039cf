#pragma once
// Dense complex inner loops used by the matrix layer.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The active variant is chosen once per process from CPUID; both are
// callable directly so tests can check them against each other.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace phqm::kernels {

using Complex = std::complex<double>;

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

// Sum of conj(a[i]) * b[i].
using DotcFn = Complex (*)(std::span<const Complex> a, std::span<const Complex> b);
// Sum of a[i] * b[i].
using DotuFn = Complex (*)(std::span<const Complex> a, std::span<const Complex> b);
// y = A x for a row-major n x n matrix A.
using GemvFn = void (*)(std::size_t n, const Complex* a, const Complex* x, Complex* y);
// C = A B for row-major n x n matrices. C must not alias A or B.
using GemmFn = void (*)(std::size_t n, const Complex* a, const Complex* b, Complex* c);

struct KernelTable {
    Isa isa;
    DotcFn dotc;
    DotuFn dotu;
    GemvFn gemv;
    GemmFn gemm;
};

namespace scalar {
Complex dotc(std::span<const Complex> a, std::span<const Complex> b);
Complex dotu(std::span<const Complex> a, std::span<const Complex> b);
void gemv(std::size_t n, const Complex* a, const Complex* x, Complex* y);
void gemm(std::size_t n, const Complex* a, const Complex* b, Complex* c);
}  // namespace scalar

namespace avx2 {
Complex dotc(std::span<const Complex> a, std::span<const Complex> b);
Complex dotu(std::span<const Complex> a, std::span<const Complex> b);
void gemv(std::size_t n, const Complex* a, const Complex* x, Complex* y);
void gemm(std::size_t n, const Complex* a, const Complex* b, Complex* c);
}  // namespace avx2

/// True when the AVX2 variants were compiled in and the CPU supports AVX2+FMA.
bool avx2_available();

/// Table for a specific ISA. Requesting avx2 when unavailable returns scalar.
const KernelTable& table_for(Isa isa);

/// The process-wide table, fixed on first use.
const KernelTable& active();

}  // namespace phqm::kernels
