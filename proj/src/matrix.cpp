#include "phqm/matrix.hpp"

#include <cmath>
#include <string>

#include "phqm/error.hpp"
#include "phqm/kernels.hpp"

namespace phqm {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::dimension_mismatch: return "DimensionMismatch";
        case ErrorKind::non_finite: return "NonFinite";
        case ErrorKind::defective: return "Defective";
        case ErrorKind::degenerate: return "Degenerate";
        case ErrorKind::overflow: return "Overflow";
        case ErrorKind::not_positive_definite: return "NotPositiveDefinite";
        case ErrorKind::not_hermitian: return "NotHermitian";
        case ErrorKind::complex_spectrum: return "ComplexSpectrum";
        case ErrorKind::not_quasi_hermitian: return "NotQuasiHermitian";
        case ErrorKind::not_eta_hermitian: return "NotEtaHermitian";
        case ErrorKind::not_closed_system: return "NotClosedSystem";
        case ErrorKind::zero_vector: return "ZeroVector";
        case ErrorKind::degenerate_time: return "DegenerateTime";
        case ErrorKind::singular_transform: return "SingularTransform";
        case ErrorKind::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

SquareMatrix::SquareMatrix(std::size_t n) : n_(n), a_(n * n) {
    if (n == 0) throw Error(ErrorKind::invalid_argument, "matrix dimension must be >= 1");
}

SquareMatrix::SquareMatrix(std::size_t n, std::vector<Complex> entries)
    : n_(n), a_(std::move(entries)) {
    if (n == 0) throw Error(ErrorKind::invalid_argument, "matrix dimension must be >= 1");
    if (a_.size() != n * n) {
        throw Error(ErrorKind::dimension_mismatch,
                    "expected " + std::to_string(n * n) + " entries, got " + std::to_string(a_.size()));
    }
    if (!all_finite()) throw Error(ErrorKind::non_finite, "matrix has NaN or Inf entries");
}

SquareMatrix::SquareMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : n_(rows.size()) {
    if (n_ == 0) throw Error(ErrorKind::invalid_argument, "matrix dimension must be >= 1");
    a_.reserve(n_ * n_);
    for (const auto& r : rows) {
        if (r.size() != n_) throw Error(ErrorKind::dimension_mismatch, "ragged matrix literal");
        a_.insert(a_.end(), r.begin(), r.end());
    }
    if (!all_finite()) throw Error(ErrorKind::non_finite, "matrix has NaN or Inf entries");
}

SquareMatrix SquareMatrix::identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

SquareMatrix SquareMatrix::diagonal(std::span<const Complex> d) {
    SquareMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    if (!m.all_finite()) throw Error(ErrorKind::non_finite, "diagonal has NaN or Inf entries");
    return m;
}

SquareMatrix SquareMatrix::diagonal(std::initializer_list<Complex> d) {
    return diagonal(std::span<const Complex>(d.begin(), d.size()));
}

bool SquareMatrix::all_finite() const {
    for (const auto& z : a_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

SquareMatrix& SquareMatrix::operator+=(const SquareMatrix& o) {
    require_same_dim(*this, o, "operator+");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

SquareMatrix& SquareMatrix::operator-=(const SquareMatrix& o) {
    require_same_dim(*this, o, "operator-");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

SquareMatrix& SquareMatrix::operator*=(Complex s) {
    for (auto& z : a_) z *= s;
    return *this;
}

SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
SquareMatrix operator*(SquareMatrix a, Complex s) { return a *= s; }
SquareMatrix operator*(Complex s, SquareMatrix a) { return a *= s; }

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    require_same_dim(a, b, "matrix product");
    SquareMatrix c(a.dim());
    kernels::active().gemm(a.dim(), a.data().data(), b.data().data(), c.data().data());
    return c;
}

Vector operator*(const SquareMatrix& a, std::span<const Complex> x) {
    if (x.size() != a.dim()) {
        throw Error(ErrorKind::dimension_mismatch, "matrix-vector product: vector length " +
                                                       std::to_string(x.size()) + " vs dim " +
                                                       std::to_string(a.dim()));
    }
    Vector y(a.dim());
    kernels::active().gemv(a.dim(), a.data().data(), x.data(), y.data());
    return y;
}

Vector operator+(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::dimension_mismatch, "vector sum");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vector operator-(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::dimension_mismatch, "vector difference");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vector operator*(Complex s, const Vector& a) {
    Vector r(a);
    for (auto& z : r) z *= s;
    return r;
}

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw Error(ErrorKind::dimension_mismatch, "dot product");
    return kernels::active().dotc(a, b);
}

double norm2(std::span<const Complex> a) {
    double s = 0.0;
    for (const auto& z : a) s += std::norm(z);
    return std::sqrt(s);
}

double norm(const SquareMatrix& m) { return norm2(m.data()); }

double norm1(const SquareMatrix& m) {
    double best = 0.0;
    for (std::size_t j = 0; j < m.dim(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m.dim(); ++i) s += std::abs(m(i, j));
        best = std::max(best, s);
    }
    return best;
}

double trace_real(const SquareMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) s += m(i, i).real();
    return s;
}

SquareMatrix outer(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size() || a.empty()) throw Error(ErrorKind::dimension_mismatch, "outer product");
    SquareMatrix m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
    return m;
}

Eigen::MatrixXcd to_eigen(const SquareMatrix& m) {
    const auto n = static_cast<Eigen::Index>(m.dim());
    Eigen::MatrixXcd e(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            e(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return e;
}

SquareMatrix from_eigen(const Eigen::MatrixXcd& e) {
    if (e.rows() != e.cols()) throw Error(ErrorKind::dimension_mismatch, "non-square Eigen matrix");
    const auto n = static_cast<std::size_t>(e.rows());
    std::vector<Complex> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[i * n + j] = e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return SquareMatrix(n, std::move(a));
}

Eigen::VectorXcd to_eigen(std::span<const Complex> v) {
    Eigen::VectorXcd e(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) e(static_cast<Eigen::Index>(i)) = v[i];
    return e;
}

Vector from_eigen(const Eigen::VectorXcd& v) { return Vector(v.data(), v.data() + v.size()); }

void require_same_dim(const SquareMatrix& a, const SquareMatrix& b, const char* where) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::dimension_mismatch, std::string(where) + ": " + std::to_string(a.dim()) +
                                                       " vs " + std::to_string(b.dim()));
    }
}

void require_dim(const SquareMatrix& a, std::size_t n, const char* where) {
    if (a.dim() != n) {
        throw Error(ErrorKind::dimension_mismatch, std::string(where) + ": dim " + std::to_string(a.dim()) +
                                                       " vs " + std::to_string(n));
    }
}

}  // namespace phqm
