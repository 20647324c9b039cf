#pragma once
// Physical layer: systems, rays, observables, expectation values, Born-rule
// distributions and seeded collapse.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "phqm/metric.hpp"

namespace phqm {

/// Triplet (C^n, H, eta) plus physical constants.
class QuantumSystem {
public:
    QuantumSystem(SquareMatrix hamiltonian, MetricOperator metric, PhysicalConstants constants = {},
                  double tol = kDefaultTol);

    /// Hermitian Hamiltonian with the Euclidean metric.
    static QuantumSystem euclidean(SquareMatrix hamiltonian, PhysicalConstants constants = {});

    std::size_t dim() const noexcept { return hamiltonian_.dim(); }
    const SquareMatrix& hamiltonian() const noexcept { return hamiltonian_; }
    const MetricOperator& metric() const noexcept { return metric_; }
    const PhysicalConstants& constants() const noexcept { return constants_; }
    double hbar() const noexcept { return constants_.hbar; }
    double tol() const noexcept { return tol_; }
    /// True when H is quasi-Hermitian for the metric (the generator is an observable).
    bool closed() const noexcept { return closed_; }

private:
    SquareMatrix hamiltonian_;
    MetricOperator metric_;
    PhysicalConstants constants_;
    double tol_;
    bool closed_;
};

/// A one-dimensional subspace, carried by any nonzero representative.
class Ray {
public:
    /// Throws ZeroVector for the zero vector.
    explicit Ray(Vector representative);

    const Vector& representative() const noexcept { return rep_; }
    std::size_t dim() const noexcept { return rep_.size(); }

    /// Same ray, representative scaled to eta-norm 1 with its first nonzero
    /// component rotated onto the positive real axis.
    Ray canonical(const MetricOperator& eta) const;

    /// Proportionality test: the component of other orthogonal to this ray is
    /// at most tol relative to other's norm (Euclidean).
    bool same_as(const Ray& other, double tol = 1e-10) const;

private:
    Vector rep_;
};

class Observable {
public:
    const SquareMatrix& matrix() const noexcept { return matrix_; }
    bool certified() const noexcept { return certified_; }
    /// No repeated eigenvalues; required for measurement distributions.
    bool simple_spectrum() const noexcept { return simple_; }

private:
    friend Observable validate_observable(const SquareMatrix&, const QuantumSystem&, double);
    Observable(SquareMatrix m, bool simple) : matrix_(std::move(m)), certified_(true), simple_(simple) {}

    SquareMatrix matrix_;
    bool certified_;
    bool simple_;
};

/// Certifies O as an observable of sys: real spectrum, complete eigenvectors,
/// Hermitian for the system metric. Throws ComplexSpectrum, Defective or
/// NotEtaHermitian (checked in that order).
Observable validate_observable(const SquareMatrix& o, const QuantumSystem& sys, double tol = kDefaultTol);

/// <<psi, O psi>> / <<psi, psi>> before the imaginary part is dropped.
Complex expectation_complex(const SquareMatrix& o, const MetricOperator& eta, std::span<const Complex> psi);

/// Real expectation value of a certified observable.
double expectation(const Observable& o, const QuantumSystem& sys, const Ray& state);

struct MeasurementOutcome {
    double omega;
    double probability;
    Ray post;
};

struct MeasurementDistribution {
    std::vector<MeasurementOutcome> outcomes;  // ascending omega

    double total_probability() const;
};

/// P_w = |<<psi, psi_w>>|^2 / (<<psi, psi>> <<psi_w, psi_w>>), one outcome per
/// eigenvalue. Throws Degenerate for repeated eigenvalues.
MeasurementDistribution measurement_distribution(const Observable& o, const QuantumSystem& sys,
                                                 const Ray& state);

/// Deterministic 64-bit seed for (master, stream, substream).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t substream = 0);

/// Uniform doubles in [0, 1) from a seeded Mersenne twister; 53 random bits each.
class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

/// Index of the outcome selected by u in [0, 1) against cumulative probabilities.
std::size_t sample_index(std::span<const double> probabilities, double u);

struct CollapseResult {
    std::size_t index;
    double omega;
    Ray post;
};

/// Draws one outcome; identical seeds give identical results.
CollapseResult collapse(const MeasurementDistribution& dist, std::uint64_t seed);

/// n independent draws from a single stream seeded by seed.
std::vector<std::size_t> collapse_indices(const MeasurementDistribution& dist, std::uint64_t seed, std::size_t n);

}  // namespace phqm
