#include <cmath>
#include <set>

#include "phqm/composite.hpp"
#include "phqm/error.hpp"
#include "phqm/random.hpp"
#include "test_support.hpp"

namespace phqm {
namespace {

const SquareMatrix kSz = SquareMatrix::diagonal({1.0, -1.0});

TEST(Conjugate, Examples) {
    const double r = 1.0 / std::sqrt(2.0);
    const SquareMatrix hadamard{{r, r}, {r, -r}};
    const ConjugacyElement c = conjugate(kSz, hadamard);
    EXPECT_MATRIX_NEAR(c.element, (SquareMatrix{{0.0, 1.0}, {1.0, 0.0}}), 1e-15);
    EXPECT_LE(c.spectral_defect, 1e-15);
    // Non-unitary transform: still similar, no longer Hermitian.
    const ConjugacyElement d = conjugate(kSz, SquareMatrix{{1.0, 2.0}, {0.0, 1.0}});
    EXPECT_MATRIX_NEAR(d.element, (SquareMatrix{{1.0, -4.0}, {0.0, -1.0}}), 1e-14);
    EXPECT_FALSE(is_hermitian(d.element));
}

TEST(Conjugate, Errors) {
    EXPECT_THROW_KIND(conjugate(SquareMatrix{{1.0, 1.0}, {0.0, 1.0}}, SquareMatrix::identity(2)), not_hermitian);
    EXPECT_THROW_KIND(conjugate(kSz, SquareMatrix{{1.0, 1.0}, {1.0, 1.0}}), singular_transform);
    EXPECT_THROW_KIND(conjugate(kSz, SquareMatrix::identity(3)), dimension_mismatch);
}

TEST(Conjugate, RandomSpectrumPreserved) {
    Rng rng(51);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 2 + rep % 6;
        const SquareMatrix h = random_hermitian(n, rng);
        const ConjugacyElement c = conjugate(h, random_matrix(n, rng) + SquareMatrix::identity(n) * 2.0);
        EXPECT_LE(spectrum_distance(eigenvalues(c.element), eigenvalues(h)), 1e-8);
        EXPECT_TRUE(is_quasi_hermitian(c.element, metric_from_spectrum(c.element)));
    }
}

TEST(HermitianMembers, UnitaryOrbitIsLarge) {
    Rng rng(52);
    std::vector<SquareMatrix> probes;
    for (int i = 0; i < 50; ++i) probes.push_back(random_unitary(3, rng));
    probes.push_back(SquareMatrix::identity(3));
    probes.push_back(SquareMatrix::identity(3));
    const SquareMatrix h = SquareMatrix::diagonal({-1.0, 0.5, 2.0});
    const auto members = hermitian_members(h, probes);
    EXPECT_GE(members.size(), 49u);
    EXPECT_LE(members.size(), 51u);
    for (const auto& m : members) {
        EXPECT_LE(hermiticity_defect(m), 1e-12);
        EXPECT_LE(spectrum_distance(eigenvalues(m), eigenvalues(h)), 1e-10);
    }
}

TEST(Heisenberg, HermitianConventionsAgree) {
    Rng rng(53);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 2 + rep % 4;
        const SquareMatrix h = random_hermitian(n, rng);
        const SquareMatrix o = random_hermitian(n, rng);
        const SquareMatrix a = heisenberg_evolve(o, h, 0.8, HeisenbergConvention::similarity);
        const SquareMatrix b = heisenberg_evolve(o, h, 0.8, HeisenbergConvention::adjoint);
        EXPECT_MATRIX_NEAR(a, b, 1e-12);
        EXPECT_MATRIX_NEAR(heisenberg_evolve(h, h, 0.8, HeisenbergConvention::similarity), h, 1e-12);
    }
}

TEST(Heisenberg, SpinFlipConventionsDiffer) {
    // U = I - i t N with N = [[0, 0], [a, 0]]: U^dagger U = [[1 + a^2 t^2, i a t], [-i a t, 1]].
    const double a = 3.0, t = 0.5;
    const SquareMatrix h = spin_flip_hamiltonian(0.0, a);
    const SquareMatrix id = SquareMatrix::identity(2);
    EXPECT_MATRIX_NEAR(heisenberg_evolve(id, h, t, HeisenbergConvention::similarity), id, 1e-14);
    const SquareMatrix gram{{1 + a * a * t * t, kI * a * t}, {-kI * a * t, 1.0}};
    EXPECT_MATRIX_NEAR(heisenberg_evolve(id, h, t, HeisenbergConvention::adjoint), gram, 1e-13);
    // hbar rescales time.
    EXPECT_MATRIX_NEAR(heisenberg_evolve(id, h, 2 * t, HeisenbergConvention::adjoint, 2.0), gram, 1e-13);
}

TEST(EnergyAudit, QuasiHermitianConserved) {
    Rng rng(54);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 2 + rep % 4;
        const auto inst = random_quasi_hermitian(n, rng);
        const double t = 20.0 / norm(inst.hamiltonian);
        const EnergyAudit a =
            energy_conservation_audit(inst.hamiltonian, inst.hermitian, inst.eta, random_vector(n, rng), t, 100);
        EXPECT_LE(a.eta_energy_drift, 1e-8);
        EXPECT_EQ(a.times.size(), a.eta_energy.size());
        EXPECT_EQ(a.times.size(), a.euclid_energy.size());
    }
}

TEST(EnergyAudit, HermitianEnergyDriftsUnderPtDynamics) {
    const SquareMatrix h = pt_family(0.6, 1.0, 1.2);
    const MetricOperator eta = metric_from_spectrum(h);
    const Hermitization herm = hermitize(h, eta);
    const EnergyAudit a = energy_conservation_audit(h, herm.h, eta, Vector{1.0, Complex(0.3, 0.2)}, 10.0, 400);
    EXPECT_LE(a.eta_energy_drift, 1e-8);
    EXPECT_GT(a.euclid_energy_drift, 1e-3);
}

TEST(EnergyAudit, Errors) {
    const MetricOperator id = MetricOperator::euclidean(2);
    EXPECT_THROW_KIND(energy_conservation_audit(kSz, SquareMatrix{{1.0, 1.0}, {0.0, 1.0}}, id, Vector{1.0, 0.0}, 1.0, 10),
                      not_hermitian);
    EXPECT_THROW_KIND(energy_conservation_audit(spin_flip_hamiltonian(0.0, 1.0), kSz, id, Vector{1.0, 0.0}, 1.0, 10),
                      not_quasi_hermitian);
    EXPECT_THROW_KIND(energy_conservation_audit(kSz, kSz, id, Vector{0.0, 0.0}, 1.0, 10), zero_vector);
}

RepeatedMeasurementConfig scaled_config(double delta_t, std::size_t trials, std::uint64_t seed) {
    RepeatedMeasurementConfig c{SquareMatrix::identity(2), kSz, Vector{1.0, 0.0}};
    c.delta_t = delta_t;
    c.scale_coupling = true;
    c.coupling_factor = 10.0;
    c.trials = trials;
    c.seed = seed;
    return c;
}

TEST(RepeatedMeasurement, ScaledCouplingExactProbability) {
    // x = a dt / hbar = 10: the collapsed (1, 0) survives with 1 / (1 + x^2).
    for (double dt : {1e-4, 1e-2, 1.0}) {
        const auto r = repeated_measurement_experiment(scaled_config(dt, 20000, 3));
        EXPECT_NEAR(r.exact_repeat_probability, 1.0 / 101.0, 1e-12);
        const double p = 1.0 / 101.0;
        EXPECT_LE(std::abs(r.repeat_probability - p), 3 * std::sqrt(p * (1 - p) / 20000.0));
        EXPECT_EQ(r.trials, 20000u);
    }
}

TEST(RepeatedMeasurement, CommutingBaselineAlwaysRepeats) {
    RepeatedMeasurementConfig c{SquareMatrix::diagonal({0.3, -0.7}), kSz, Vector{1.0, 1.0}};
    c.delta_t = 0.5;
    c.trials = 2000;
    c.seed = 9;
    const auto r = repeated_measurement_experiment(c);
    EXPECT_EQ(r.repeats, r.trials);
    EXPECT_EQ(r.repeat_probability, 1.0);
    EXPECT_NEAR(r.exact_repeat_probability, 1.0, 1e-14);
    std::size_t total = 0;
    for (const auto& [w, n] : r.first_histogram) total += n;
    EXPECT_EQ(total, r.trials);
}

TEST(RepeatedMeasurement, DeterministicPerSeed) {
    const auto a = repeated_measurement_experiment(scaled_config(0.01, 500, 77));
    const auto b = repeated_measurement_experiment(scaled_config(0.01, 500, 77));
    EXPECT_EQ(a.repeats, b.repeats);
    EXPECT_EQ(a.outcome_histogram, b.outcome_histogram);
    EXPECT_THROW_KIND(repeated_measurement_experiment(scaled_config(0.0, 10, 1)), degenerate_time);
    EXPECT_THROW_KIND(repeated_measurement_experiment(scaled_config(0.01, 0, 1)), invalid_argument);
}

}  // namespace
}  // namespace phqm
