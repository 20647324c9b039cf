#pragma once
// Metric operators and the Hermitizing equivalence map.
//
// An inner product <<psi, phi>> on C^n is represented by a Hermitian
// positive-definite matrix eta through <<psi, phi>> = psi^dagger eta phi.
// H is quasi-Hermitian for eta when eta H = H^dagger eta.

#include <optional>
#include <span>

#include "phqm/linalg.hpp"

namespace phqm {

class MetricOperator {
public:
    /// Validates Hermiticity (relative defect <= tol) and positive definiteness.
    /// Throws NotHermitian / NotPositiveDefinite.
    explicit MetricOperator(SquareMatrix eta, double tol = kDefaultTol);

    static MetricOperator euclidean(std::size_t n);

    const SquareMatrix& matrix() const noexcept { return eta_; }
    double tol() const noexcept { return tol_; }
    std::size_t dim() const noexcept { return eta_.dim(); }
    bool is_identity() const;

private:
    SquareMatrix eta_;
    double tol_;
};

struct EquivalenceMap {
    SquareMatrix rho;      // eta^{1/2}
    SquareMatrix rho_inv;  // eta^{-1/2}

    Vector apply(std::span<const Complex> psi) const { return rho * psi; }
    /// rho O rho^{-1}
    SquareMatrix transform(const SquareMatrix& o) const { return rho * o * rho_inv; }
};

Complex inner(const MetricOperator& eta, std::span<const Complex> psi, std::span<const Complex> phi);
double eta_norm(const MetricOperator& eta, std::span<const Complex> psi);

/// ||eta H - H^dagger eta|| / (||eta|| ||H||), 0 for H == 0.
double quasi_hermiticity_defect(const SquareMatrix& h, const MetricOperator& eta);
bool is_quasi_hermitian(const SquareMatrix& h, const MetricOperator& eta, double tol = kDefaultTol);

/// eta = sum_n c_n phi_n phi_n^dagger over the biorthonormal left eigenvectors of H.
///
/// Any positive weights c_n give a valid metric; the default is c_n = 1. Weights
/// follow the eigenvalue order of eig(). Throws ComplexSpectrum, Defective or
/// Degenerate.
MetricOperator metric_from_spectrum(const SquareMatrix& h, double tol = kDefaultTol,
                                    std::optional<std::span<const double>> weights = std::nullopt);

struct Hermitization {
    EquivalenceMap map;
    SquareMatrix h;  // rho H rho^{-1}, Hermitian and isospectral to H
};

/// Throws NotQuasiHermitian if eta H != H^dagger eta within tol.
Hermitization hermitize(const SquareMatrix& h, const MetricOperator& eta, double tol = kDefaultTol);

/// Equivalence map alone (no Hamiltonian needed).
EquivalenceMap equivalence_map(const MetricOperator& eta);

/// [[r e^{i theta}, s], [s, r e^{-i theta}]]: real spectrum iff s^2 >= r^2 sin^2(theta).
SquareMatrix pt_family(double r, double s, double theta);

}  // namespace phqm
