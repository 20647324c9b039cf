#include "phqm/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "phqm/error.hpp"

namespace phqm {
namespace {

bool value_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

void require_finite(const SquareMatrix& m, const char* where) {
    if (!m.all_finite()) throw Error(ErrorKind::non_finite, std::string(where) + ": NaN or Inf entry");
}

struct RawEigen {
    Vector values;
    Eigen::MatrixXcd vectors;  // unit columns in the order of values
};

RawEigen raw_eigen(const SquareMatrix& m, bool with_vectors) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), with_vectors);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::non_finite, "eigenvalue iteration did not converge");
    }
    const auto n = static_cast<std::size_t>(m.dim());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto& ev = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return value_less(ev(static_cast<Eigen::Index>(a)), ev(static_cast<Eigen::Index>(b)));
    });
    RawEigen out;
    out.values.reserve(n);
    for (auto k : order) out.values.push_back(ev(static_cast<Eigen::Index>(k)));
    if (with_vectors) {
        out.vectors.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t c = 0; c < n; ++c) {
            Eigen::VectorXcd v = solver.eigenvectors().col(static_cast<Eigen::Index>(order[c]));
            v.normalize();
            Eigen::Index big = 0;
            v.cwiseAbs().maxCoeff(&big);
            const Complex ph = v(big) / std::abs(v(big));
            out.vectors.col(static_cast<Eigen::Index>(c)) = v * std::conj(ph);
        }
    }
    return out;
}

// Groups indices of sorted eigenvalues whose pairwise distance is within thresh
// (transitively).
std::vector<std::vector<std::size_t>> clusters(const Vector& values, double thresh) {
    const std::size_t n = values.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(values[i] - values[j]) <= thresh) parent[find(i)] = find(j);
    std::vector<std::vector<std::size_t>> groups;
    std::vector<long> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<long>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(slot[r])].push_back(i);
    }
    return groups;
}

Eigen::MatrixXcd shifted(const SquareMatrix& m, Complex shift) {
    Eigen::MatrixXcd a = to_eigen(m);
    a.diagonal().array() -= shift;
    return a;
}

// Dimension of the numerical kernel of M - shift*I.
std::size_t geometric_multiplicity(const SquareMatrix& m, Complex shift, double thresh) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted(m, shift));
    const auto& s = svd.singularValues();
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) <= thresh) ++k;
    return k;
}

// Condition number of a simple eigenvalue from the singular pair of M - lambda*I
// belonging to the smallest singular value.
double simple_eigenvalue_condition(const SquareMatrix& m, Complex lambda) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted(m, lambda), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Index last = svd.singularValues().size() - 1;
    const Complex overlap = svd.matrixU().col(last).dot(svd.matrixV().col(last));
    const double mag = std::abs(overlap);
    return mag > 0.0 ? 1.0 / mag : std::numeric_limits<double>::infinity();
}

double defect_threshold(double tol) { return 1.0 / std::sqrt(tol); }

}  // namespace

void validate(const PhysicalConstants& c) {
    if (!(c.hbar > 0.0) || !std::isfinite(c.hbar)) {
        throw Error(ErrorKind::invalid_argument, "hbar must be finite and positive");
    }
}

SquareMatrix adjoint(const SquareMatrix& m) {
    SquareMatrix r(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) r(i, j) = std::conj(m(j, i));
    return r;
}

double hermiticity_defect(const SquareMatrix& m) {
    const double s = norm(m);
    if (s == 0.0) return 0.0;
    return norm(m - adjoint(m)) / s;
}

bool is_hermitian(const SquareMatrix& m, double tol) { return hermiticity_defect(m) <= tol; }

Vector eigenvalues(const SquareMatrix& m) {
    require_finite(m, "eigenvalues");
    return raw_eigen(m, false).values;
}

std::vector<double> hermitian_eigenvalues(const SquareMatrix& m) {
    require_finite(m, "hermitian_eigenvalues");
    Eigen::MatrixXcd a = to_eigen(m);
    a = (0.5 * (a + a.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::EigenvaluesOnly);
    const auto& v = solver.eigenvalues();
    return {v.data(), v.data() + v.size()};
}

SpectrumCheck classify_spectrum(const SquareMatrix& m, double tol) {
    require_finite(m, "classify_spectrum");
    SpectrumCheck out;
    out.values = raw_eigen(m, false).values;
    const double scale = norm(m);
    for (const auto& v : out.values)
        if (std::abs(v.imag()) > tol * scale) out.real = false;
    for (const auto& group : clusters(out.values, tol * scale)) {
        if (group.size() > 1) {
            out.simple = false;
            Complex mean{};
            for (auto i : group) mean += out.values[i];
            mean /= static_cast<double>(group.size());
            if (geometric_multiplicity(m, mean, std::sqrt(tol) * scale) < group.size()) {
                out.diagonalizable = false;
            }
        } else if (simple_eigenvalue_condition(m, out.values[group.front()]) > defect_threshold(tol)) {
            out.diagonalizable = false;
        }
    }
    return out;
}

EigenDecomposition eig(const SquareMatrix& m, double tol) {
    require_finite(m, "eig");
    const std::size_t n = m.dim();
    RawEigen raw = raw_eigen(m, true);
    const double scale = norm(m);

    for (const auto& group : clusters(raw.values, tol * scale)) {
        if (group.size() < 2) continue;
        Complex mean{};
        for (auto i : group) mean += raw.values[i];
        mean /= static_cast<double>(group.size());
        if (geometric_multiplicity(m, mean, std::sqrt(tol) * scale) < group.size()) {
            throw Error(ErrorKind::defective, "eigenvalue " + std::to_string(mean.real()) +
                                                  " lacks a full set of eigenvectors");
        }
        throw Error(ErrorKind::degenerate, "eigenvalue " + std::to_string(mean.real()) + " has multiplicity " +
                                               std::to_string(group.size()));
    }

    Eigen::FullPivLU<Eigen::MatrixXcd> lu(raw.vectors);
    if (!lu.isInvertible()) throw Error(ErrorKind::defective, "eigenvector matrix is singular");
    const Eigen::MatrixXcd inv = lu.inverse();

    EigenDecomposition out;
    out.values = raw.values;
    out.right.reserve(n);
    out.left.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto kk = static_cast<Eigen::Index>(k);
        out.right.push_back(from_eigen(Eigen::VectorXcd(raw.vectors.col(kk))));
        // Row k of the inverse is left[k]^dagger.
        Eigen::VectorXcd phi = inv.row(kk).adjoint();
        if (phi.norm() > defect_threshold(tol)) {
            throw Error(ErrorKind::defective, "eigenvalue condition number " + std::to_string(phi.norm()) +
                                                  " exceeds 1/sqrt(tol)");
        }
        out.left.push_back(from_eigen(phi));
    }
    out.biorthonormal = true;
    return out;
}

double spectrum_distance(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    std::vector<bool> used(b.size(), false);
    double worst = 0.0;
    for (const auto& x : a) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(x - b[j]);
            if (d < best) {
                best = d;
                arg = j;
            }
        }
        used[arg] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

SquareMatrix inverse(const SquareMatrix& m) {
    require_finite(m, "inverse");
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(to_eigen(m));
    if (!lu.isInvertible()) throw Error(ErrorKind::singular_transform, "matrix is singular");
    return from_eigen(Eigen::MatrixXcd(lu.inverse()));
}

double reciprocal_condition(const SquareMatrix& m) {
    require_finite(m, "reciprocal_condition");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
    const auto& s = svd.singularValues();
    if (s(0) == 0.0) return 0.0;
    return s(s.size() - 1) / s(0);
}

// Pade coefficients and norm thresholds for degrees 3, 5, 7, 9 and 13
// (Higham, "The scaling and squaring method for the matrix exponential revisited").
namespace {

constexpr std::array<double, 4> kPade3{120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                       25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9{17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                        30270240.0,    2162160.0,    110880.0,     3960.0,
                                        90.0,          1.0};
constexpr std::array<double, 14> kPade13{64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                         1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                         670442572800.0,      33522128640.0,       1323241920.0,
                                         40840800.0,          960960.0,            16380.0,
                                         182.0,               1.0};
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

template <std::size_t N>
void pade_low(const SquareMatrix& a, const std::array<double, N>& b, SquareMatrix& u, SquareMatrix& v) {
    const std::size_t n = a.dim();
    const SquareMatrix a2 = a * a;
    SquareMatrix power = SquareMatrix::identity(n);
    SquareMatrix odd(n), even(n);
    for (std::size_t k = 0; k + 1 < N; k += 2) {
        even += power * Complex(b[k]);
        odd += power * Complex(b[k + 1]);
        power = power * a2;
    }
    u = a * odd;
    v = even;
}

void pade13(const SquareMatrix& a, SquareMatrix& u, SquareMatrix& v) {
    const auto& b = kPade13;
    const std::size_t n = a.dim();
    const SquareMatrix id = SquareMatrix::identity(n);
    const SquareMatrix a2 = a * a;
    const SquareMatrix a4 = a2 * a2;
    const SquareMatrix a6 = a4 * a2;
    const SquareMatrix inner_u = a6 * Complex(b[13]) + a4 * Complex(b[11]) + a2 * Complex(b[9]);
    const SquareMatrix inner_v = a6 * Complex(b[12]) + a4 * Complex(b[10]) + a2 * Complex(b[8]);
    u = a * (a6 * inner_u + a6 * Complex(b[7]) + a4 * Complex(b[5]) + a2 * Complex(b[3]) + id * Complex(b[1]));
    v = a6 * inner_v + a6 * Complex(b[6]) + a4 * Complex(b[4]) + a2 * Complex(b[2]) + id * Complex(b[0]);
}

}  // namespace

SquareMatrix expm(const SquareMatrix& m) {
    require_finite(m, "expm");
    const std::size_t n = m.dim();
    const double nrm = norm1(m);
    if (!std::isfinite(nrm)) throw Error(ErrorKind::overflow, "expm: norm is not finite");

    SquareMatrix u(n), v(n);
    int squarings = 0;
    if (nrm <= kTheta3) {
        pade_low(m, kPade3, u, v);
    } else if (nrm <= kTheta5) {
        pade_low(m, kPade5, u, v);
    } else if (nrm <= kTheta7) {
        pade_low(m, kPade7, u, v);
    } else if (nrm <= kTheta9) {
        pade_low(m, kPade9, u, v);
    } else {
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / kTheta13))));
        if (squarings > 1000) throw Error(ErrorKind::overflow, "expm: norm too large for scaling");
        const SquareMatrix scaled = m * Complex(std::ldexp(1.0, -squarings));
        pade13(scaled, u, v);
    }

    const Eigen::MatrixXcd p = to_eigen(v + u);
    const Eigen::MatrixXcd q = to_eigen(v - u);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(q);
    const Eigen::MatrixXcd x = lu.solve(p);
    if (!x.allFinite()) throw Error(ErrorKind::overflow, "expm: Pade solve overflowed");
    SquareMatrix r = from_eigen(x);
    for (int k = 0; k < squarings; ++k) {
        r = r * r;
        if (!r.all_finite()) throw Error(ErrorKind::overflow, "expm: squaring overflowed");
    }
    return r;
}

PdRoot sqrtm_pd_with_inverse(const SquareMatrix& m, double tol) {
    require_finite(m, "sqrtm_pd");
    if (!is_hermitian(m, tol)) {
        throw Error(ErrorKind::not_hermitian,
                    "sqrtm_pd: Hermiticity defect " + std::to_string(hermiticity_defect(m)));
    }
    Eigen::MatrixXcd a = to_eigen(m);
    a = (0.5 * (a + a.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
    const Eigen::VectorXd lambda = solver.eigenvalues();
    const double scale = norm(m);
    if (lambda.minCoeff() <= tol * scale) {
        throw Error(ErrorKind::not_positive_definite,
                    "smallest eigenvalue " + std::to_string(lambda.minCoeff()));
    }
    const Eigen::MatrixXcd& q = solver.eigenvectors();
    const Eigen::VectorXd s = lambda.cwiseSqrt();
    Eigen::MatrixXcd root = q * s.cast<Complex>().asDiagonal() * q.adjoint();
    Eigen::MatrixXcd inv = q * s.cwiseInverse().cast<Complex>().asDiagonal() * q.adjoint();
    root = (0.5 * (root + root.adjoint())).eval();
    inv = (0.5 * (inv + inv.adjoint())).eval();
    return {from_eigen(root), from_eigen(inv)};
}

SquareMatrix sqrtm_pd(const SquareMatrix& m, double tol) { return sqrtm_pd_with_inverse(m, tol).root; }

}  // namespace phqm
