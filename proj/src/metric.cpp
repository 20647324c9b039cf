#include "phqm/metric.hpp"

#include <cmath>
#include <string>

#include "phqm/error.hpp"

namespace phqm {

MetricOperator::MetricOperator(SquareMatrix eta, double tol) : eta_(std::move(eta)), tol_(tol) {
    if (!(tol > 0.0)) throw Error(ErrorKind::invalid_argument, "metric tolerance must be positive");
    // sqrtm_pd performs both the Hermiticity and the positivity check.
    (void)sqrtm_pd(eta_, tol_);
}

MetricOperator MetricOperator::euclidean(std::size_t n) { return MetricOperator(SquareMatrix::identity(n)); }

bool MetricOperator::is_identity() const { return eta_ == SquareMatrix::identity(eta_.dim()); }

Complex inner(const MetricOperator& eta, std::span<const Complex> psi, std::span<const Complex> phi) {
    if (psi.size() != eta.dim() || phi.size() != eta.dim()) {
        throw Error(ErrorKind::dimension_mismatch, "inner: vector length vs metric dim " +
                                                       std::to_string(eta.dim()));
    }
    if (eta.is_identity()) return dot(psi, phi);
    const Vector eta_phi = eta.matrix() * phi;
    return dot(psi, eta_phi);
}

double eta_norm(const MetricOperator& eta, std::span<const Complex> psi) {
    return std::sqrt(std::max(0.0, inner(eta, psi, psi).real()));
}

double quasi_hermiticity_defect(const SquareMatrix& h, const MetricOperator& eta) {
    require_same_dim(h, eta.matrix(), "quasi_hermiticity_defect");
    const double scale = norm(eta.matrix()) * norm(h);
    if (scale == 0.0) return 0.0;
    const SquareMatrix& e = eta.matrix();
    return norm(e * h - adjoint(h) * e) / scale;
}

bool is_quasi_hermitian(const SquareMatrix& h, const MetricOperator& eta, double tol) {
    return quasi_hermiticity_defect(h, eta) <= tol;
}

MetricOperator metric_from_spectrum(const SquareMatrix& h, double tol,
                                    std::optional<std::span<const double>> weights) {
    const EigenDecomposition ed = eig(h, tol);
    const double scale = norm(h);
    for (const auto& v : ed.values) {
        if (std::abs(v.imag()) > tol * scale) {
            throw Error(ErrorKind::complex_spectrum,
                        "eigenvalue " + std::to_string(v.real()) + (v.imag() < 0 ? "" : "+") +
                            std::to_string(v.imag()) + "i is not real");
        }
    }
    const std::size_t n = h.dim();
    if (weights && weights->size() != n) {
        throw Error(ErrorKind::dimension_mismatch, "metric weights: expected " + std::to_string(n));
    }
    SquareMatrix eta(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double c = weights ? (*weights)[k] : 1.0;
        if (!(c > 0.0) || !std::isfinite(c)) {
            throw Error(ErrorKind::invalid_argument, "metric weights must be finite and positive");
        }
        eta += outer(ed.left[k], ed.left[k]) * Complex(c);
    }
    // Exact Hermiticity; the sum is Hermitian up to rounding.
    eta = (eta + adjoint(eta)) * Complex(0.5);
    return MetricOperator(std::move(eta), tol);
}

EquivalenceMap equivalence_map(const MetricOperator& eta) {
    PdRoot r = sqrtm_pd_with_inverse(eta.matrix(), eta.tol());
    return {std::move(r.root), std::move(r.inverse_root)};
}

Hermitization hermitize(const SquareMatrix& h, const MetricOperator& eta, double tol) {
    require_same_dim(h, eta.matrix(), "hermitize");
    const double defect = quasi_hermiticity_defect(h, eta);
    if (defect > tol) {
        throw Error(ErrorKind::not_quasi_hermitian, "||eta H - H^dagger eta|| relative defect " +
                                                        std::to_string(defect));
    }
    EquivalenceMap map = equivalence_map(eta);
    SquareMatrix herm = map.transform(h);
    return {std::move(map), std::move(herm)};
}

SquareMatrix pt_family(double r, double s, double theta) {
    const Complex phase = std::polar(1.0, theta);
    return SquareMatrix{{r * phase, s}, {s, r * std::conj(phase)}};
}

}  // namespace phqm
