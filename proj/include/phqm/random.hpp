#pragma once
// Seeded random instances for property checks and the verify command.

#include <cstdint>
#include <random>

#include "phqm/metric.hpp"

namespace phqm {

using Rng = std::mt19937_64;

Vector random_vector(std::size_t n, Rng& rng);
SquareMatrix random_matrix(std::size_t n, Rng& rng);
/// Haar-distributed unitary from the QR factorization of a Gaussian matrix.
SquareMatrix random_unitary(std::size_t n, Rng& rng);
/// U diag(d) U^dagger with d uniform in [lo, hi].
SquareMatrix random_hermitian(std::size_t n, Rng& rng, double lo = -2.0, double hi = 2.0);
/// Positive-definite metric with eigenvalues in [lo, hi].
MetricOperator random_metric(std::size_t n, Rng& rng, double lo = 0.2, double hi = 5.0);

struct QuasiHermitianInstance {
    MetricOperator eta;
    SquareMatrix hermitian;  // h0
    SquareMatrix hamiltonian;  // rho^{-1} h0 rho, quasi-Hermitian for eta
};

/// Random eta and Hermitian h0 (spectrum spread over [-2, 2]), mapped back by
/// the inverse equivalence map.
QuasiHermitianInstance random_quasi_hermitian(std::size_t n, Rng& rng);

}  // namespace phqm
