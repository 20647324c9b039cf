#include "phqm/random.hpp"

#include <cmath>

#include <Eigen/QR>

namespace phqm {

Vector random_vector(std::size_t n, Rng& rng) {
    std::normal_distribution<double> g;
    Vector v(n);
    for (auto& z : v) z = {g(rng), g(rng)};
    return v;
}

SquareMatrix random_matrix(std::size_t n, Rng& rng) {
    std::normal_distribution<double> g;
    SquareMatrix m(n);
    for (auto& z : m.data()) z = {g(rng), g(rng)};
    return m;
}

SquareMatrix random_unitary(std::size_t n, Rng& rng) {
    const Eigen::MatrixXcd a = to_eigen(random_matrix(n, rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return from_eigen(q);
}

SquareMatrix random_hermitian(std::size_t n, Rng& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    Vector d(n);
    for (auto& z : d) z = u(rng);
    const SquareMatrix q = random_unitary(n, rng);
    SquareMatrix h = q * SquareMatrix::diagonal(d) * adjoint(q);
    return (h + adjoint(h)) * Complex(0.5);
}

MetricOperator random_metric(std::size_t n, Rng& rng, double lo, double hi) {
    return MetricOperator(random_hermitian(n, rng, lo, hi));
}

QuasiHermitianInstance random_quasi_hermitian(std::size_t n, Rng& rng) {
    MetricOperator eta = random_metric(n, rng);
    SquareMatrix h0 = random_hermitian(n, rng);
    const EquivalenceMap map = equivalence_map(eta);
    SquareMatrix hamiltonian = map.rho_inv * h0 * map.rho;
    return {std::move(eta), std::move(h0), std::move(hamiltonian)};
}

}  // namespace phqm
