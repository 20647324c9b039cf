#include "phqm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "phqm/composite.hpp"
#include "phqm/error.hpp"
#include "phqm/random.hpp"

namespace phqm {
namespace {

// Worst value seen per invariant plus its threshold; the flag passes when the
// worst value stays at or below the threshold.
class Tracker {
public:
    void observe(const std::string& name, double value, double limit) {
        auto [it, fresh] = worst_.try_emplace(name, Entry{value, limit});
        if (!fresh) it->second.value = std::max(it->second.value, value);
        if (fresh) order_.push_back(name);
        if (std::isnan(value)) it->second.value = std::numeric_limits<double>::infinity();
    }
    // Lower-bound invariants (e.g. "at least N distinct members").
    void observe_min(const std::string& name, double value, double floor) {
        auto [it, fresh] = least_.try_emplace(name, Entry{value, floor});
        if (!fresh) it->second.value = std::min(it->second.value, value);
        if (fresh) order_.push_back(name);
    }

    void write(ExperimentReport& report) const {
        for (const auto& name : order_) {
            if (auto it = worst_.find(name); it != worst_.end()) {
                report.scalar(name, it->second.value);
                report.flag(name, it->second.value <= it->second.limit);
            } else {
                const auto& e = least_.at(name);
                report.scalar(name, e.value);
                report.flag(name, e.value >= e.limit);
            }
        }
    }

private:
    struct Entry {
        double value;
        double limit;
    };
    std::map<std::string, Entry> worst_;
    std::map<std::string, Entry> least_;
    std::vector<std::string> order_;
};

double identity_defect(const SquareMatrix& m) { return norm(m - SquareMatrix::identity(m.dim())); }

Vector scaled(const Vector& v, Complex c) { return c * v; }

void numerics_suite(Tracker& t, std::size_t n, Rng& rng, double tol) {
    const auto inst = random_quasi_hermitian(n, rng);
    // Completeness of the biorthonormal system, for a quasi-Hermitian and a
    // generic (complex-spectrum) matrix.
    for (const SquareMatrix& m : {inst.hamiltonian, random_matrix(n, rng)}) {
        const auto ed = eig(m, tol);
        SquareMatrix sum(n);
        for (std::size_t k = 0; k < n; ++k) sum += outer(ed.right[k], ed.left[k]);
        t.observe("numerics.completeness", identity_defect(sum), 1e-10);
        double residual = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            residual = std::max(residual, norm2(m * ed.right[k] - ed.values[k] * ed.right[k]) / norm(m));
        }
        t.observe("numerics.eigen_residual", residual, 1e-10);
    }

    std::uniform_real_distribution<double> radius(0.0, 10.0);
    SquareMatrix a = random_matrix(n, rng);
    a *= Complex(radius(rng) / norm(a));
    t.observe("numerics.expm_inverse", identity_defect(expm(a) * expm(a * Complex(-1.0))), 1e-10);

    // Commuting pair: B is a polynomial in A.
    SquareMatrix small = random_matrix(n, rng);
    small *= Complex(1.5 / norm(small));
    const SquareMatrix b = small * Complex(0.5, -0.25) + small * small * Complex(0.3);
    const SquareMatrix lhs = expm(small) * expm(b);
    t.observe("numerics.expm_commuting", norm(lhs - expm(small + b)) / norm(lhs), 1e-10);

    const SquareMatrix pd = random_metric(n, rng).matrix();
    const SquareMatrix root = sqrtm_pd(pd, tol);
    t.observe("numerics.sqrtm_square", norm(root * root - pd) / norm(pd), 1e-10);
}

void metric_suite(Tracker& t, std::size_t n, Rng& rng, double tol) {
    const auto inst = random_quasi_hermitian(n, rng);
    const MetricOperator eta = metric_from_spectrum(inst.hamiltonian, tol);
    t.observe("metric.eta_hermitian", hermiticity_defect(eta.matrix()), 1e-10);
    t.observe_min("metric.eta_min_eigenvalue", hermitian_eigenvalues(eta.matrix()).front(), 1e-300);
    t.observe("metric.quasi_hermitian", quasi_hermiticity_defect(inst.hamiltonian, eta), 1e-10);

    const Hermitization herm = hermitize(inst.hamiltonian, inst.eta, tol);
    t.observe("metric.hermitize_defect", hermiticity_defect(herm.h), 1e-10);
    t.observe("metric.hermitize_spectrum", spectrum_distance(eigenvalues(herm.h), eigenvalues(inst.hamiltonian)),
              1e-8);

    const Vector psi = random_vector(n, rng);
    const Vector phi = random_vector(n, rng);
    const Complex lhs = inner(inst.eta, psi, phi);
    const Complex rhs = dot(herm.map.apply(psi), herm.map.apply(phi));
    t.observe("metric.isometry", std::abs(lhs - rhs) / (eta_norm(inst.eta, psi) * eta_norm(inst.eta, phi)), 1e-12);
}

void qsystem_suite(Tracker& t, std::size_t n, Rng& rng, double tol) {
    const auto inst = random_quasi_hermitian(n, rng);
    const QuantumSystem sys(inst.hamiltonian, inst.eta, {}, tol);
    const Observable obs = validate_observable(inst.hamiltonian, sys, tol);
    const Vector psi = random_vector(n, rng);
    std::normal_distribution<double> g;
    const Complex c{g(rng), g(rng)};

    const auto dist = measurement_distribution(obs, sys, Ray(psi));
    const auto dist_scaled = measurement_distribution(obs, sys, Ray(scaled(psi, c)));
    t.observe("qsystem.probability_sum", std::abs(dist.total_probability() - 1.0), 1e-12);

    double scale_err = std::abs(expectation(obs, sys, Ray(psi)) - expectation(obs, sys, Ray(scaled(psi, c))));
    for (std::size_t k = 0; k < n; ++k) {
        scale_err = std::max(scale_err, std::abs(dist.outcomes[k].probability - dist_scaled.outcomes[k].probability));
    }
    t.observe("qsystem.ray_independence", scale_err, 1e-12);

    const Complex raw = expectation_complex(inst.hamiltonian, inst.eta, psi);
    t.observe("qsystem.reality", std::abs(raw.imag()), 1e-10);

    // Transport through the equivalence map to a Euclidean Born rule.
    const Hermitization herm = hermitize(inst.hamiltonian, inst.eta, tol);
    const QuantumSystem flat = QuantumSystem::euclidean(herm.h);
    const Observable hobs = validate_observable(herm.h, flat, tol);
    const auto flat_dist = measurement_distribution(hobs, flat, Ray(herm.map.apply(psi)));
    double transport = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        transport = std::max(transport, std::abs(dist.outcomes[k].probability - flat_dist.outcomes[k].probability));
    }
    t.observe("qsystem.equivalence_transport", transport, 1e-10);
}

void evolution_suite(Tracker& t, std::size_t n, Rng& rng, double tol) {
    const auto inst = random_quasi_hermitian(n, rng);
    const QuantumSystem sys(inst.hamiltonian, inst.eta, {}, tol);
    const Vector psi0 = random_vector(n, rng);

    // eta-unitarity up to ||H|| t / hbar = 20.
    const double horizon = 20.0 / norm(inst.hamiltonian);
    const double eta0 = inner(inst.eta, psi0, psi0).real();
    double drift = 0.0;
    for (int k = 1; k <= 8; ++k) {
        const Vector psi = propagate(sys, psi0, horizon * k / 8.0);
        drift = std::max(drift, std::abs(inner(inst.eta, psi, psi).real() - eta0) / eta0);
    }
    t.observe("evolution.eta_unitarity", drift, 1e-8);

    const Vector phi = random_vector(n, rng);
    const EquivalenceMap map = equivalence_map(inst.eta);
    t.observe("evolution.fs_isometry",
              std::abs(fs_angle(inst.eta, psi0, phi) -
                       fs_angle(MetricOperator::euclidean(n), map.apply(psi0), map.apply(phi))),
              1e-12);

    const double step = 1e-5;
    const double rate = fs_angle(inst.eta, psi0, propagate(sys, psi0, step)) / step;
    t.observe("evolution.speed_identity", std::abs(rate - evolution_speed(sys, psi0)), 1e-6);

    std::uniform_real_distribution<double> u(-5.0, 5.0);
    const SpinFlipParams p{u(rng), u(rng), std::abs(u(rng)), 1.0};
    const QuantumSystem flip = QuantumSystem::euclidean(spin_flip_hamiltonian(p.energy, p.coupling));
    const Vector evolved = propagate(flip, Vector{1.0, 0.0}, p.time);
    t.observe("evolution.closed_form",
              fs_angle(MetricOperator::euclidean(2), evolved, spin_flip_closed_form(p).representative()), 1e-10);
    if (p.coupling != 0.0 && p.time > 0.0) {
        const double x = p.coupling * p.time / p.hbar;
        t.observe("evolution.residual_law", std::abs(fast_flip_residual(p).residual - 1.0 / std::sqrt(1.0 + x * x)),
                  1e-12);
    }
}

void composite_suite(Tracker& t, std::size_t n, Rng& rng, std::uint64_t seed, std::size_t index, double tol) {
    const SquareMatrix h = random_hermitian(n, rng);
    const SquareMatrix g = random_matrix(n, rng) + SquareMatrix::identity(n) * Complex(2.0);
    const ConjugacyElement el = conjugate(h, g, tol);
    t.observe("composite.isospectral", el.spectral_defect, 1e-8);

    const auto inst = random_quasi_hermitian(n, rng);
    const double tt = 3.0 / norm(inst.hamiltonian);
    const SquareMatrix evolved =
        heisenberg_evolve(inst.hamiltonian, inst.hamiltonian, tt, HeisenbergConvention::similarity);
    t.observe("composite.generator_fixed", norm(evolved - inst.hamiltonian) / norm(inst.hamiltonian), 1e-10);

    // Baseline: dynamics and measurement by the same Hermitian operator.
    RepeatedMeasurementConfig cfg{h, h, random_vector(n, rng), 0.7, false, 10.0, 0.0, 64,
                                  derive_seed(seed, 0xC0FFEE, index), 1.0};
    const auto baseline = repeated_measurement_experiment(cfg, tol);
    t.observe_min("composite.baseline_repeat", baseline.repeat_probability, 1.0);
    const auto again = repeated_measurement_experiment(cfg, tol);
    t.observe("composite.seeded_determinism",
              (again.repeats == baseline.repeats && again.outcome_histogram == baseline.outcome_histogram) ? 0.0 : 1.0,
              0.0);
}

}  // namespace

ExperimentReport verify_invariants(const VerifyOptions& options) {
    if (options.max_dim < 2) throw Error(ErrorKind::invalid_argument, "verify needs dim >= 2");
    ExperimentReport report("verify");
    Tracker tracker;
    std::vector<double> dims;
    for (std::size_t c = 0; c < options.cases; ++c) {
        const std::size_t n = 2 + c % (options.max_dim - 1);
        Rng rng(derive_seed(options.seed, c));
        numerics_suite(tracker, n, rng, options.tol);
        metric_suite(tracker, n, rng, options.tol);
        qsystem_suite(tracker, n, rng, options.tol);
        evolution_suite(tracker, n, rng, options.tol);
        composite_suite(tracker, n, rng, options.seed, c, options.tol);
        dims.push_back(static_cast<double>(n));
    }
    tracker.write(report);
    report.column("dim", std::move(dims));
    return report;
}

}  // namespace phqm
