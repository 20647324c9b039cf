#pragma once
// Dense complex vectors and square matrices.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace phqm {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kDefaultTol = 1e-10;

/// Row-major n x n complex matrix with finite entries.
class SquareMatrix {
public:
    /// n x n zero matrix. Throws if n == 0.
    explicit SquareMatrix(std::size_t n);
    /// Takes ownership of row-major entries; size must be a nonzero perfect square.
    SquareMatrix(std::size_t n, std::vector<Complex> entries);
    /// Nested row list, e.g. {{1, 2}, {3, 4}}.
    SquareMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static SquareMatrix identity(std::size_t n);
    static SquareMatrix diagonal(std::span<const Complex> d);
    static SquareMatrix diagonal(std::initializer_list<Complex> d);

    std::size_t dim() const noexcept { return n_; }
    Complex& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    std::span<const Complex> data() const noexcept { return a_; }
    std::span<Complex> data() noexcept { return a_; }
    std::span<const Complex> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }

    bool all_finite() const;

    SquareMatrix& operator+=(const SquareMatrix& o);
    SquareMatrix& operator-=(const SquareMatrix& o);
    SquareMatrix& operator*=(Complex s);

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::size_t n_;
    std::vector<Complex> a_;
};

SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b);
SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b);
SquareMatrix operator*(SquareMatrix a, Complex s);
SquareMatrix operator*(Complex s, SquareMatrix a);
SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
Vector operator*(const SquareMatrix& a, std::span<const Complex> x);

// Vector helpers.
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(Complex s, const Vector& a);

/// Euclidean inner product, conjugate-linear in the first argument.
Complex dot(std::span<const Complex> a, std::span<const Complex> b);
double norm2(std::span<const Complex> a);

/// Frobenius norm; used as the scale for all relative tolerances.
double norm(const SquareMatrix& m);
/// Maximum absolute column sum.
double norm1(const SquareMatrix& m);
double trace_real(const SquareMatrix& m);

SquareMatrix outer(std::span<const Complex> a, std::span<const Complex> b);  // a b^dagger

Eigen::MatrixXcd to_eigen(const SquareMatrix& m);
SquareMatrix from_eigen(const Eigen::MatrixXcd& m);
Eigen::VectorXcd to_eigen(std::span<const Complex> v);
Vector from_eigen(const Eigen::VectorXcd& v);

void require_same_dim(const SquareMatrix& a, const SquareMatrix& b, const char* where);
void require_dim(const SquareMatrix& a, std::size_t n, const char* where);

}  // namespace phqm
