#pragma once
// Numerical core: adjoints, biorthonormal eigensystems, the matrix exponential
// and positive-definite square roots.

#include <vector>

#include "phqm/matrix.hpp"

namespace phqm {

struct PhysicalConstants {
    double hbar = 1.0;
};

/// Throws invalid_argument unless hbar is finite and positive.
void validate(const PhysicalConstants& c);

/// Right and left eigenvectors of a diagonalizable matrix with simple spectrum.
///
/// Values are sorted by (real, imag). Right vectors have unit 2-norm with their
/// largest component rotated onto the positive real axis; left vectors are scaled
/// so that dot(left[m], right[n]) == delta_mn.
struct EigenDecomposition {
    Vector values;
    std::vector<Vector> right;
    std::vector<Vector> left;
    bool biorthonormal = false;
};

SquareMatrix adjoint(const SquareMatrix& m);

/// Relative Hermiticity defect ||M - M^dagger|| / ||M|| (0 for the zero matrix).
double hermiticity_defect(const SquareMatrix& m);
bool is_hermitian(const SquareMatrix& m, double tol = kDefaultTol);

/// Eigensystem with biorthonormal left vectors.
///
/// Eigenvalues closer than tol*||M|| are treated as one cluster; a cluster whose
/// geometric multiplicity is short of its size raises Defective, otherwise
/// Degenerate. A simple eigenvalue with condition number above 1/sqrt(tol) is
/// numerically indistinguishable from a Jordan block and also raises Defective.
EigenDecomposition eig(const SquareMatrix& m, double tol = kDefaultTol);

/// Eigenvalues only, sorted by (real, imag). Works for any finite matrix.
Vector eigenvalues(const SquareMatrix& m);

/// Eigenvalues of a Hermitian matrix, ascending.
std::vector<double> hermitian_eigenvalues(const SquareMatrix& m);

struct SpectrumCheck {
    bool real = true;              // every |imag| <= tol*||M||
    bool diagonalizable = true;
    bool simple = true;            // no cluster of size > 1
    Vector values;
};

/// Spectral classification that tolerates degenerate (but diagonalizable) input.
SpectrumCheck classify_spectrum(const SquareMatrix& m, double tol = kDefaultTol);

/// Largest distance under a greedy nearest-neighbour multiset matching.
double spectrum_distance(const Vector& a, const Vector& b);

/// Matrix exponential by scaling and squaring with Pade approximants.
/// Valid for defective input. Throws Overflow when the scaled norm is not finite
/// or the result overflows.
SquareMatrix expm(const SquareMatrix& m);

SquareMatrix inverse(const SquareMatrix& m);

/// Smallest over largest singular value.
double reciprocal_condition(const SquareMatrix& m);

/// Unique Hermitian positive-definite square root.
SquareMatrix sqrtm_pd(const SquareMatrix& m, double tol = kDefaultTol);

struct PdRoot {
    SquareMatrix root;
    SquareMatrix inverse_root;
};

/// sqrtm_pd together with its inverse from the same eigendecomposition.
PdRoot sqrtm_pd_with_inverse(const SquareMatrix& m, double tol = kDefaultTol);

}  // namespace phqm
