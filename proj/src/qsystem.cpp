#include "phqm/qsystem.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "phqm/error.hpp"

namespace phqm {

QuantumSystem::QuantumSystem(SquareMatrix hamiltonian, MetricOperator metric, PhysicalConstants constants,
                             double tol)
    : hamiltonian_(std::move(hamiltonian)), metric_(std::move(metric)), constants_(constants), tol_(tol) {
    require_same_dim(hamiltonian_, metric_.matrix(), "QuantumSystem");
    validate(constants_);
    if (!hamiltonian_.all_finite()) throw Error(ErrorKind::non_finite, "Hamiltonian has NaN or Inf entries");
    closed_ = is_quasi_hermitian(hamiltonian_, metric_, tol_);
}

QuantumSystem QuantumSystem::euclidean(SquareMatrix hamiltonian, PhysicalConstants constants) {
    const std::size_t n = hamiltonian.dim();
    return QuantumSystem(std::move(hamiltonian), MetricOperator::euclidean(n), constants);
}

Ray::Ray(Vector representative) : rep_(std::move(representative)) {
    if (rep_.empty() || norm2(rep_) == 0.0) throw Error(ErrorKind::zero_vector, "a ray needs a nonzero vector");
    for (const auto& z : rep_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw Error(ErrorKind::non_finite, "ray representative has NaN or Inf entries");
        }
    }
}

Ray Ray::canonical(const MetricOperator& eta) const {
    Vector v = rep_;
    const double scale = eta_norm(eta, v);
    double biggest = 0.0;
    for (const auto& z : v) biggest = std::max(biggest, std::abs(z));
    Complex phase{1.0, 0.0};
    for (const auto& z : v) {
        if (std::abs(z) > 1e-12 * biggest) {
            phase = z / std::abs(z);
            break;
        }
    }
    const Complex f = std::conj(phase) / scale;
    for (auto& z : v) z *= f;
    return Ray(std::move(v));
}

bool Ray::same_as(const Ray& other, double tol) const {
    if (dim() != other.dim()) return false;
    const Vector& a = rep_;
    const Vector& b = other.rep_;
    const Complex c = dot(a, b) / dot(a, a).real();
    double perp = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) perp += std::norm(b[i] - c * a[i]);
    return std::sqrt(perp) <= tol * norm2(b);
}

Observable validate_observable(const SquareMatrix& o, const QuantumSystem& sys, double tol) {
    require_same_dim(o, sys.hamiltonian(), "validate_observable");
    const SpectrumCheck spec = classify_spectrum(o, tol);
    if (!spec.real) {
        throw Error(ErrorKind::complex_spectrum, "observables must have a real spectrum");
    }
    if (!spec.diagonalizable) {
        throw Error(ErrorKind::defective, "observables must have a complete set of eigenvectors");
    }
    const double defect = quasi_hermiticity_defect(o, sys.metric());
    if (defect > tol) {
        throw Error(ErrorKind::not_eta_hermitian, "observable is not Hermitian for the metric (defect " +
                                                      std::to_string(defect) + ")");
    }
    return Observable(o, spec.simple);
}

Complex expectation_complex(const SquareMatrix& o, const MetricOperator& eta, std::span<const Complex> psi) {
    const Vector o_psi = o * psi;
    return inner(eta, psi, o_psi) / inner(eta, psi, psi).real();
}

double expectation(const Observable& o, const QuantumSystem& sys, const Ray& state) {
    if (!o.certified()) throw Error(ErrorKind::invalid_argument, "expectation needs a certified observable");
    return expectation_complex(o.matrix(), sys.metric(), state.representative()).real();
}

double MeasurementDistribution::total_probability() const {
    double s = 0.0;
    for (const auto& o : outcomes) s += o.probability;
    return s;
}

MeasurementDistribution measurement_distribution(const Observable& o, const QuantumSystem& sys,
                                                 const Ray& state) {
    if (!o.certified()) throw Error(ErrorKind::invalid_argument, "measurement needs a certified observable");
    if (!o.simple_spectrum()) {
        throw Error(ErrorKind::degenerate, "measurement of degenerate observables is not supported");
    }
    if (state.dim() != sys.dim()) throw Error(ErrorKind::dimension_mismatch, "state vs system dimension");
    const EigenDecomposition ed = eig(o.matrix(), sys.tol());
    const MetricOperator& eta = sys.metric();
    const Vector& psi = state.representative();
    const double psi_sq = inner(eta, psi, psi).real();

    MeasurementDistribution dist;
    dist.outcomes.reserve(ed.values.size());
    for (std::size_t k = 0; k < ed.values.size(); ++k) {
        const Vector& eigvec = ed.right[k];
        const double overlap = std::norm(inner(eta, psi, eigvec));
        const double eig_sq = inner(eta, eigvec, eigvec).real();
        dist.outcomes.push_back({ed.values[k].real(), overlap / (psi_sq * eig_sq), Ray(eigvec).canonical(eta)});
    }
    return dist;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t substream) {
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      static_cast<std::uint32_t>(substream), static_cast<std::uint32_t>(substream >> 32)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

std::size_t sample_index(std::span<const double> probabilities, double u) {
    if (probabilities.empty()) throw Error(ErrorKind::invalid_argument, "empty distribution");
    double cumulative = 0.0;
    for (std::size_t k = 0; k + 1 < probabilities.size(); ++k) {
        cumulative += probabilities[k];
        if (u < cumulative) return k;
    }
    return probabilities.size() - 1;
}

namespace {

std::vector<double> probabilities_of(const MeasurementDistribution& dist) {
    std::vector<double> p;
    p.reserve(dist.outcomes.size());
    for (const auto& o : dist.outcomes) p.push_back(o.probability);
    return p;
}

}  // namespace

CollapseResult collapse(const MeasurementDistribution& dist, std::uint64_t seed) {
    const auto p = probabilities_of(dist);
    UniformSource source(seed);
    const std::size_t k = sample_index(p, source.next());
    return {k, dist.outcomes[k].omega, dist.outcomes[k].post};
}

std::vector<std::size_t> collapse_indices(const MeasurementDistribution& dist, std::uint64_t seed, std::size_t n) {
    const auto p = probabilities_of(dist);
    UniformSource source(seed);
    std::vector<std::size_t> out(n);
    for (auto& k : out) k = sample_index(p, source.next());
    return out;
}

}  // namespace phqm
