#include <cmath>
#include <algorithm>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "phqm/error.hpp"
#include "phqm/qsystem.hpp"
#include "phqm/random.hpp"
#include "test_support.hpp"

namespace phqm {
namespace {

const SquareMatrix kSz = SquareMatrix::diagonal({1.0, -1.0});
const SquareMatrix kSx{{0.0, 1.0}, {1.0, 0.0}};

TEST(QuantumSystem, ClosedFlag) {
    EXPECT_TRUE(QuantumSystem::euclidean(kSz).closed());
    const QuantumSystem open(SquareMatrix{{1.0, 1.0}, {0.0, 2.0}}, MetricOperator::euclidean(2));
    EXPECT_FALSE(open.closed());
    EXPECT_THROW_KIND(QuantumSystem(SquareMatrix::identity(3), MetricOperator::euclidean(2)), dimension_mismatch);
    EXPECT_THROW_KIND(QuantumSystem::euclidean(kSz, PhysicalConstants{0.0}), invalid_argument);
}

TEST(Ray, RejectsZero) { EXPECT_THROW_KIND(Ray(Vector{0.0, 0.0}), zero_vector); }

TEST(Ray, CanonicalForm) {
    const Ray r(Vector{Complex(0.0, 3.0), Complex(0.0, 4.0)});
    const Ray c = r.canonical(MetricOperator::euclidean(2));
    EXPECT_NEAR(std::abs(c.representative()[0] - 0.6), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(c.representative()[1] - 0.8), 0.0, 1e-15);
    EXPECT_TRUE(r.same_as(c));
    EXPECT_FALSE(r.same_as(Ray(Vector{1.0, 0.0})));
    // Leading zero is skipped when choosing the phase.
    const Ray z = Ray(Vector{0.0, Complex(0.0, -2.0)}).canonical(MetricOperator::euclidean(2));
    EXPECT_NEAR(std::abs(z.representative()[1] - 1.0), 0.0, 1e-15);
}

TEST(ValidateObservable, Examples) {
    const QuantumSystem sys = QuantumSystem::euclidean(kSz);
    const Observable o = validate_observable(kSz, sys);
    EXPECT_TRUE(o.certified());
    EXPECT_TRUE(o.simple_spectrum());
    EXPECT_FALSE(validate_observable(SquareMatrix::identity(2), sys).simple_spectrum());
    EXPECT_THROW_KIND(validate_observable(SquareMatrix{{0.0, 1.0}, {-1.0, 0.0}}, sys), complex_spectrum);
    EXPECT_THROW_KIND(validate_observable(SquareMatrix{{0.5, 1.0}, {0.0, 0.5}}, sys), defective);
    // S_z has real simple spectrum but is not Hermitian for a non-diagonal metric.
    const SquareMatrix h = pt_family(0.5, 1.0, std::numbers::pi / 2);
    const QuantumSystem pt(h, metric_from_spectrum(h));
    EXPECT_THROW_KIND(validate_observable(kSz, pt), not_eta_hermitian);
    EXPECT_TRUE(validate_observable(h, pt).certified());
}

TEST(Expectation, Examples) {
    const QuantumSystem sys = QuantumSystem::euclidean(kSz);
    const Observable sz = validate_observable(kSz, sys);
    const Observable sx = validate_observable(kSx, sys);
    EXPECT_DOUBLE_EQ(expectation(sz, sys, Ray(Vector{1.0, 0.0})), 1.0);
    EXPECT_DOUBLE_EQ(expectation(sz, sys, Ray(Vector{0.0, 5.0})), -1.0);
    EXPECT_NEAR(expectation(sx, sys, Ray(Vector{1.0, 1.0})), 1.0, 1e-15);
    EXPECT_NEAR(expectation(sz, sys, Ray(Vector{1.0, 1.0})), 0.0, 1e-15);
}

TEST(Expectation, RayInvariantAndReal) {
    Rng rng(31);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 2 + rep % 5;
        const auto inst = random_quasi_hermitian(n, rng);
        const QuantumSystem sys(inst.hamiltonian, inst.eta);
        const Observable o = validate_observable(inst.hamiltonian, sys);
        const Vector psi = random_vector(n, rng);
        const Complex z(std::cos(rep * 0.3) * 3.0, std::sin(rep * 0.3) * 3.0);
        const double e1 = expectation(o, sys, Ray(psi));
        const double e2 = expectation(o, sys, Ray(z * psi));
        EXPECT_NEAR(e1, e2, 1e-12 * std::max(1.0, std::abs(e1)));
        const Complex ec = expectation_complex(inst.hamiltonian, inst.eta, psi);
        EXPECT_LE(std::abs(ec.imag()), 1e-10 * norm(inst.hamiltonian));
        // Lies between the extreme eigenvalues.
        const auto ev = hermitian_eigenvalues(inst.hermitian);
        EXPECT_GE(e1, ev.front() - 1e-10);
        EXPECT_LE(e1, ev.back() + 1e-10);
    }
}

TEST(Distribution, SpinExamples) {
    const QuantumSystem sys = QuantumSystem::euclidean(kSz);
    const Observable sz = validate_observable(kSz, sys);
    const auto d = measurement_distribution(sz, sys, Ray(Vector{1.0, 1.0}));
    ASSERT_EQ(d.outcomes.size(), 2u);
    EXPECT_DOUBLE_EQ(d.outcomes[0].omega, -1.0);
    EXPECT_DOUBLE_EQ(d.outcomes[1].omega, 1.0);
    EXPECT_NEAR(d.outcomes[0].probability, 0.5, 1e-15);
    EXPECT_NEAR(d.outcomes[1].probability, 0.5, 1e-15);
    EXPECT_TRUE(d.outcomes[1].post.same_as(Ray(Vector{1.0, 0.0})));
    // cos^2(pi/8) for a state at angle pi/8 from (1, 0).
    const double a = std::numbers::pi / 8;
    const auto d2 = measurement_distribution(sz, sys, Ray(Vector{std::cos(a), std::sin(a)}));
    EXPECT_NEAR(d2.outcomes[1].probability, std::cos(a) * std::cos(a), 1e-15);
    EXPECT_THROW_KIND(measurement_distribution(validate_observable(SquareMatrix::identity(2), sys), sys,
                                               Ray(Vector{1.0, 0.0})),
                      degenerate);
}

TEST(Distribution, MatchesMappedHermitianRule) {
    Rng rng(32);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 2 + rep % 5;
        const auto inst = random_quasi_hermitian(n, rng);
        const QuantumSystem sys(inst.hamiltonian, inst.eta);
        const Observable o = validate_observable(inst.hamiltonian, sys);
        const Vector psi = random_vector(n, rng);
        const auto d = measurement_distribution(o, sys, Ray(psi));
        EXPECT_NEAR(d.total_probability(), 1.0, 1e-12);
        // Oracle: Euclidean Born rule for h0 on rho psi.
        const auto map = equivalence_map(inst.eta);
        const Vector mapped = map.apply(psi);
        const auto he = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(to_eigen(inst.hermitian));
        const double nn = std::pow(norm2(mapped), 2);
        for (std::size_t k = 0; k < n; ++k) {
            Complex ov = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                ov += std::conj(he.eigenvectors()(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k))) * mapped[j];
            EXPECT_NEAR(d.outcomes[k].omega, he.eigenvalues()(static_cast<Eigen::Index>(k)), 1e-9);
            EXPECT_NEAR(d.outcomes[k].probability, std::norm(ov) / nn, 1e-10);
        }
    }
}

TEST(Sampling, SampleIndex) {
    const double p[] = {0.25, 0.5, 0.25};
    EXPECT_EQ(sample_index(p, 0.0), 0u);
    EXPECT_EQ(sample_index(p, 0.2499), 0u);
    EXPECT_EQ(sample_index(p, 0.25), 1u);
    EXPECT_EQ(sample_index(p, 0.74), 1u);
    EXPECT_EQ(sample_index(p, 0.9999999), 2u);
}

TEST(Sampling, DeriveSeedDistinctAndStable) {
    EXPECT_EQ(derive_seed(1, 2, 3), derive_seed(1, 2, 3));
    EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 3, 2));
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
    UniformSource a(5), b(5);
    for (int i = 0; i < 10; ++i) {
        const double u = a.next();
        EXPECT_EQ(u, b.next());
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

TEST(Collapse, Deterministic) {
    const QuantumSystem sys = QuantumSystem::euclidean(kSz);
    const Observable sz = validate_observable(kSz, sys);
    const auto certain = measurement_distribution(sz, sys, Ray(Vector{1.0, 0.0}));
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto c = collapse(certain, s);
        EXPECT_EQ(c.index, 1u);
        EXPECT_DOUBLE_EQ(c.omega, 1.0);
    }
    const auto half = measurement_distribution(sz, sys, Ray(Vector{1.0, 1.0}));
    EXPECT_EQ(collapse(half, 99).index, collapse(half, 99).index);
    EXPECT_EQ(collapse_indices(half, 4, 50), collapse_indices(half, 4, 50));
}

TEST(Collapse, FrequencyMatchesProbability) {
    const QuantumSystem sys = QuantumSystem::euclidean(kSz);
    const Observable sz = validate_observable(kSz, sys);
    const auto half = measurement_distribution(sz, sys, Ray(Vector{1.0, 1.0}));
    const auto draws = collapse_indices(half, 2024, 100000);
    const double freq = static_cast<double>(std::count(draws.begin(), draws.end(), 1u)) / 1e5;
    EXPECT_GE(freq, 0.494);
    EXPECT_LE(freq, 0.506);
}

}  // namespace
}  // namespace phqm
