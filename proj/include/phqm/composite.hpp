#pragma once
// Experiments on the composite scheme in which measurements use a Hermitian
// operator h while dynamics are generated by a non-Hermitian H from the same
// conjugacy class.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "phqm/evolution.hpp"

namespace phqm {

struct ConjugacyElement {
    SquareMatrix base;       // Hermitian h
    SquareMatrix transform;  // invertible g
    SquareMatrix element;    // g h g^{-1}
    double spectral_defect;  // multiset distance between the spectra
};

/// Throws NotHermitian for a non-Hermitian base and SingularTransform when g is
/// singular to within tol or the conjugate loses the base spectrum.
ConjugacyElement conjugate(const SquareMatrix& h, const SquareMatrix& g, double tol = kDefaultTol);

/// Distinct Hermitian matrices u h u^{-1} over the probes, in probe order.
/// Two members are distinct when their Frobenius distance exceeds tol*||h||.
std::vector<SquareMatrix> hermitian_members(const SquareMatrix& h, std::span<const SquareMatrix> probes,
                                            double tol = kDefaultTol);

enum class HeisenbergConvention {
    similarity,  // e^{iHt/hbar} O e^{-iHt/hbar}
    adjoint,     // e^{iH^dagger t/hbar} O e^{-iHt/hbar}
};

SquareMatrix heisenberg_evolve(const SquareMatrix& o, const SquareMatrix& h, double t,
                               HeisenbergConvention convention, double hbar = 1.0);

struct EnergyAudit {
    std::vector<double> times;
    std::vector<double> eta_energy;     // <H>_eta along the H trajectory
    std::vector<double> euclid_energy;  // Euclidean <h> along the same trajectory
    double eta_energy_drift = 0.0;      // max |x(t) - x(0)| / spectral radius
    double euclid_energy_drift = 0.0;
};

/// Throws NotHermitian (h), NotQuasiHermitian (H with eta) or ZeroVector.
EnergyAudit energy_conservation_audit(const SquareMatrix& hamiltonian, const SquareMatrix& hermitian_energy,
                                      const MetricOperator& eta, std::span<const Complex> psi0,
                                      double total_time, std::size_t steps, double hbar = 1.0,
                                      double tol = kDefaultTol);

struct RepeatedMeasurementConfig {
    SquareMatrix dynamics;   // H; replaced by the fast-flip generator when scale_coupling
    SquareMatrix measured;   // Hermitian h, simple spectrum
    Vector psi0;
    double delta_t = 1.0;
    bool scale_coupling = false;
    double coupling_factor = 10.0;  // c in a = c hbar / delta_t
    double energy = 0.0;            // E of the fast-flip generator
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    double hbar = 1.0;
};

struct RepeatedMeasurementReport {
    double delta_t = 0.0;
    std::size_t trials = 0;
    std::size_t repeats = 0;
    double repeat_probability = 0.0;
    double exact_repeat_probability = 0.0;  // sum_k P1(k) P2(k | k)
    std::vector<std::pair<double, std::size_t>> first_histogram;   // eigenvalue -> count
    std::vector<std::pair<double, std::size_t>> outcome_histogram;  // second measurement
    std::uint64_t seed = 0;
};

/// Measure h, evolve the collapsed state under H for delta_t, measure h again.
/// Trial i draws both outcomes from derive_seed(seed, i).
RepeatedMeasurementReport repeated_measurement_experiment(const RepeatedMeasurementConfig& config,
                                                          double tol = kDefaultTol);

}  // namespace phqm
