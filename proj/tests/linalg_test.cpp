#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "phqm/error.hpp"
#include "phqm/linalg.hpp"
#include "phqm/random.hpp"
#include "test_support.hpp"

namespace phqm {
namespace {

// Spectral route e^M = V e^D V^{-1}; independent of the Pade kernel and valid
// for diagonalizable M only.
SquareMatrix spectral_expm(const SquareMatrix& m) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(m));
    const Eigen::MatrixXcd v = es.eigenvectors();
    const Eigen::VectorXcd d = es.eigenvalues().array().exp();
    return from_eigen(Eigen::MatrixXcd(v * d.asDiagonal() * v.inverse()));
}

// Truncated Taylor series, for ||M|| <= 1.
SquareMatrix taylor_expm(const SquareMatrix& m, int terms = 40) {
    const std::size_t n = m.dim();
    SquareMatrix sum = SquareMatrix::identity(n);
    SquareMatrix term = SquareMatrix::identity(n);
    for (int k = 1; k < terms; ++k) {
        term = term * m * Complex(1.0 / k);
        sum += term;
    }
    return sum;
}

TEST(Adjoint, Examples) {
    EXPECT_EQ(adjoint(SquareMatrix::identity(3)), SquareMatrix::identity(3));
    const SquareMatrix m{{0.0, kI}, {0.0, 0.0}};
    const SquareMatrix expected{{0.0, 0.0}, {-kI, 0.0}};
    EXPECT_EQ(adjoint(m), expected);
    Rng rng(1);
    const SquareMatrix r = random_matrix(5, rng);
    EXPECT_EQ(adjoint(adjoint(r)), r);
}

TEST(Matrix, RejectsNonFiniteAndEmpty) {
    EXPECT_THROW_KIND(SquareMatrix(0), invalid_argument);
    EXPECT_THROW_KIND((SquareMatrix{{std::numeric_limits<double>::quiet_NaN()}}), non_finite);
    EXPECT_THROW_KIND(SquareMatrix(2, std::vector<Complex>(3)), dimension_mismatch);
}

TEST(Eig, DiagonalMatrix) {
    const auto ed = eig(SquareMatrix::diagonal({2.0, 1.0}));
    ASSERT_EQ(ed.values.size(), 2u);
    EXPECT_EQ(ed.values[0], Complex(1.0));
    EXPECT_EQ(ed.values[1], Complex(2.0));
    EXPECT_LE(test::max_abs_diff(ed.right[0], Vector{0.0, 1.0}), 1e-15);
    EXPECT_LE(test::max_abs_diff(ed.left[0], Vector{0.0, 1.0}), 1e-15);
    EXPECT_LE(test::max_abs_diff(ed.right[1], Vector{1.0, 0.0}), 1e-15);
    EXPECT_TRUE(ed.biorthonormal);
}

TEST(Eig, JordanBlockIsDefective) {
    for (double a : {1.0, -3.5, 1e-3}) {
        EXPECT_THROW_KIND(eig(SquareMatrix{{2.0, a}, {0.0, 2.0}}), defective);
        EXPECT_THROW_KIND(eig(SquareMatrix{{2.0, 0.0}, {a, 2.0}}), defective);
    }
}

TEST(Eig, RepeatedEigenvalueIsDegenerate) {
    EXPECT_THROW_KIND(eig(SquareMatrix::identity(3)), degenerate);
    EXPECT_THROW_KIND(eig(SquareMatrix::diagonal({1.0, 2.0, 1.0})), degenerate);
}

TEST(Eig, RandomHermitianHasRealValuesAndEqualLeftRight) {
    Rng rng(2);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 2 + rep % 7;
        const SquareMatrix h = random_hermitian(n, rng);
        const auto ed = eig(h);
        for (std::size_t k = 0; k < n; ++k) {
            EXPECT_LE(std::abs(ed.values[k].imag()), 1e-12);
            // Residual by direct substitution.
            EXPECT_LE(norm2(h * ed.right[k] - ed.values[k] * ed.right[k]), 1e-10 * norm(h));
            EXPECT_LE(test::max_abs_diff(ed.left[k], ed.right[k]), 1e-10);
        }
    }
}

TEST(Eig, BiorthonormalCompleteness) {
    Rng rng(3);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 2 + rep % 8;
        const SquareMatrix m = random_matrix(n, rng);
        const auto ed = eig(m);
        SquareMatrix sum(n);
        for (std::size_t k = 0; k < n; ++k) {
            sum += outer(ed.right[k], ed.left[k]);
            EXPECT_NEAR(norm2(ed.right[k]), 1.0, 1e-14);
            for (std::size_t j = 0; j < n; ++j) {
                const Complex expected = j == k ? 1.0 : 0.0;
                EXPECT_LE(std::abs(dot(ed.left[j], ed.right[k]) - expected), 1e-10);
            }
        }
        EXPECT_LE(norm(sum - SquareMatrix::identity(n)), 1e-10);
    }
}

TEST(ClassifySpectrum, AcceptsDegenerateDiagonalizable) {
    const auto id = classify_spectrum(SquareMatrix::identity(2));
    EXPECT_TRUE(id.real);
    EXPECT_TRUE(id.diagonalizable);
    EXPECT_FALSE(id.simple);
    const auto jordan = classify_spectrum(SquareMatrix{{1.0, 0.0}, {1.0, 1.0}});
    EXPECT_FALSE(jordan.diagonalizable);
    const auto rot = classify_spectrum(SquareMatrix{{0.0, 1.0}, {-1.0, 0.0}});
    EXPECT_FALSE(rot.real);
    EXPECT_TRUE(rot.diagonalizable);
}

TEST(Expm, Examples) {
    EXPECT_MATRIX_NEAR(expm(SquareMatrix(3)), SquareMatrix::identity(3), 0.0);
    for (double a : {0.5, 7.0, -250.0}) {
        const SquareMatrix nil{{0.0, a}, {0.0, 0.0}};
        EXPECT_MATRIX_NEAR(expm(nil), (SquareMatrix{{1.0, a}, {0.0, 1.0}}), 1e-13 * std::abs(a));
    }
    const SquareMatrix phase = SquareMatrix::diagonal({Complex(0.0, std::numbers::pi), 0.0});
    EXPECT_MATRIX_NEAR(expm(phase), SquareMatrix::diagonal({-1.0, 1.0}), 1e-15);
}

TEST(Expm, MatchesTaylorAndSpectralOracles) {
    Rng rng(4);
    std::uniform_real_distribution<double> radius(0.0, 1.0);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 1 + rep % 8;
        SquareMatrix m = random_matrix(n, rng);
        m *= Complex(radius(rng) / norm(m));
        const SquareMatrix e = expm(m);
        EXPECT_LE(norm(e - taylor_expm(m)) / norm(e), 1e-14);
        // Larger norms: compare with the spectral route on well-conditioned
        // (normal) input.
        const SquareMatrix h = random_hermitian(n, rng, -8.0, 8.0);
        const SquareMatrix u = h * Complex(0.3, -1.0);
        EXPECT_LE(norm(expm(u) - spectral_expm(u)) / norm(expm(u)), 1e-12);
    }
}

TEST(Expm, InverseAndCommutingProperties) {
    Rng rng(5);
    std::uniform_real_distribution<double> radius(0.0, 10.0);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 2 + rep % 7;
        SquareMatrix m = random_matrix(n, rng);
        m *= Complex(radius(rng) / norm(m));
        EXPECT_LE(norm(expm(m) * expm(m * Complex(-1.0)) - SquareMatrix::identity(n)), 1e-10);

        SquareMatrix a = random_matrix(n, rng);
        a *= Complex(2.0 / norm(a));
        const SquareMatrix b = a * a * Complex(0.25) - a * Complex(0.0, 0.5) + SquareMatrix::identity(n);
        const SquareMatrix lhs = expm(a) * expm(b);
        EXPECT_LE(norm(lhs - expm(a + b)) / norm(lhs), 1e-10);
    }
}

TEST(Expm, OverflowIsReported) {
    EXPECT_THROW_KIND(expm(SquareMatrix::diagonal({800.0, 0.0})), overflow);
    EXPECT_THROW_KIND(expm(SquareMatrix::diagonal({1e306, 1e306})), overflow);
}

TEST(SqrtmPd, Examples) {
    EXPECT_MATRIX_NEAR(sqrtm_pd(SquareMatrix::identity(3)), SquareMatrix::identity(3), 1e-15);
    EXPECT_MATRIX_NEAR(sqrtm_pd(SquareMatrix::diagonal({4.0, 9.0})), SquareMatrix::diagonal({2.0, 3.0}), 1e-15);
    EXPECT_THROW_KIND(sqrtm_pd(SquareMatrix::diagonal({1.0, -1.0})), not_positive_definite);
    EXPECT_THROW_KIND(sqrtm_pd((SquareMatrix{{1.0, 2.0}, {0.0, 1.0}})), not_hermitian);
}

TEST(SqrtmPd, SquaresBackAndIsHermitianPositive) {
    Rng rng(6);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 1 + rep % 9;
        const SquareMatrix m = random_hermitian(n, rng, 0.01, 10.0);
        const PdRoot r = sqrtm_pd_with_inverse(m);
        EXPECT_LE(norm(r.root * r.root - m) / norm(m), 1e-10);
        EXPECT_LE(norm(r.root * r.inverse_root - SquareMatrix::identity(n)), 1e-10);
        EXPECT_LE(hermiticity_defect(r.root), 1e-15);
        EXPECT_GT(hermitian_eigenvalues(r.root).front(), 0.0);
    }
}

TEST(SpectrumDistance, MultisetMatching) {
    EXPECT_EQ(spectrum_distance({1.0, 2.0, 3.0}, {3.0, 1.0, 2.0}), 0.0);
    EXPECT_NEAR(spectrum_distance({1.0, 1.0}, {1.0, 1.5}), 0.5, 1e-15);
    EXPECT_TRUE(std::isinf(spectrum_distance({1.0}, {1.0, 2.0})));
}

}  // namespace
}  // namespace phqm
