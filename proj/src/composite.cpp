#include "phqm/composite.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phqm/error.hpp"

namespace phqm {

ConjugacyElement conjugate(const SquareMatrix& h, const SquareMatrix& g, double tol) {
    require_same_dim(h, g, "conjugate");
    if (!is_hermitian(h, tol)) {
        throw Error(ErrorKind::not_hermitian, "conjugacy base must be Hermitian (defect " +
                                                  std::to_string(hermiticity_defect(h)) + ")");
    }
    if (reciprocal_condition(g) <= tol) throw Error(ErrorKind::singular_transform, "transform is singular");
    SquareMatrix element = g * h * inverse(g);

    const auto base_real = hermitian_eigenvalues(h);
    const Vector base_values(base_real.begin(), base_real.end());
    const double defect = spectrum_distance(eigenvalues(element), base_values);
    const double scale = std::max(std::abs(base_real.front()), std::abs(base_real.back()));
    if (defect > std::sqrt(tol) * std::max(scale, 1.0)) {
        throw Error(ErrorKind::singular_transform, "conjugation lost the spectrum (defect " +
                                                       std::to_string(defect) + ")");
    }
    return {h, g, std::move(element), defect};
}

std::vector<SquareMatrix> hermitian_members(const SquareMatrix& h, std::span<const SquareMatrix> probes,
                                            double tol) {
    const double scale = norm(h);
    std::vector<SquareMatrix> members;
    for (const auto& u : probes) {
        SquareMatrix m = u * h * inverse(u);
        if (!is_hermitian(m, tol)) continue;
        const bool seen = std::any_of(members.begin(), members.end(),
                                      [&](const SquareMatrix& x) { return norm(x - m) <= tol * scale; });
        if (!seen) members.push_back(std::move(m));
    }
    return members;
}

SquareMatrix heisenberg_evolve(const SquareMatrix& o, const SquareMatrix& h, double t,
                               HeisenbergConvention convention, double hbar) {
    require_same_dim(o, h, "heisenberg_evolve");
    validate(PhysicalConstants{hbar});
    const SquareMatrix forward = expm(h * Complex(0.0, -t / hbar));
    const SquareMatrix& generator = convention == HeisenbergConvention::similarity ? h : adjoint(h);
    const SquareMatrix backward = expm(generator * Complex(0.0, t / hbar));
    return backward * o * forward;
}

namespace {

double spectral_radius(const SquareMatrix& hermitian) {
    const auto ev = hermitian_eigenvalues(hermitian);
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

double max_deviation(const std::vector<double>& series) {
    double worst = 0.0;
    for (const double x : series) worst = std::max(worst, std::abs(x - series.front()));
    return worst;
}

std::vector<std::pair<double, std::size_t>> histogram(const MeasurementDistribution& d,
                                                      const std::vector<std::size_t>& counts) {
    std::vector<std::pair<double, std::size_t>> out;
    for (std::size_t k = 0; k < counts.size(); ++k) out.emplace_back(d.outcomes[k].omega, counts[k]);
    return out;
}

std::vector<double> probabilities(const MeasurementDistribution& d) {
    std::vector<double> p;
    for (const auto& o : d.outcomes) p.push_back(o.probability);
    return p;
}

}  // namespace

EnergyAudit energy_conservation_audit(const SquareMatrix& hamiltonian, const SquareMatrix& hermitian_energy,
                                      const MetricOperator& eta, std::span<const Complex> psi0,
                                      double total_time, std::size_t steps, double hbar, double tol) {
    require_same_dim(hamiltonian, hermitian_energy, "energy_conservation_audit");
    if (!is_hermitian(hermitian_energy, tol)) {
        throw Error(ErrorKind::not_hermitian, "measured energy operator h must be Hermitian");
    }
    const QuantumSystem sys(hamiltonian, eta, PhysicalConstants{hbar}, tol);
    if (!sys.closed()) {
        throw Error(ErrorKind::not_quasi_hermitian, "H must be Hermitian for the supplied metric");
    }
    const Trajectory traj = make_trajectory(sys, psi0, total_time, steps);
    const MetricOperator flat = MetricOperator::euclidean(sys.dim());

    EnergyAudit audit;
    audit.times = traj.times;
    for (const auto& psi : traj.vectors) {
        audit.eta_energy.push_back(expectation_complex(hamiltonian, eta, psi).real());
        audit.euclid_energy.push_back(expectation_complex(hermitian_energy, flat, psi).real());
    }
    double scale = spectral_radius(hermitian_energy);
    if (scale == 0.0) scale = 1.0;
    audit.eta_energy_drift = max_deviation(audit.eta_energy) / scale;
    audit.euclid_energy_drift = max_deviation(audit.euclid_energy) / scale;
    return audit;
}

RepeatedMeasurementReport repeated_measurement_experiment(const RepeatedMeasurementConfig& config,
                                                          double tol) {
    if (config.trials == 0) throw Error(ErrorKind::invalid_argument, "trials must be >= 1");
    if (!(config.delta_t >= 0.0) || !std::isfinite(config.delta_t)) {
        throw Error(ErrorKind::invalid_argument, "delta_t must be finite and >= 0");
    }
    const PhysicalConstants constants{config.hbar};
    validate(constants);
    if (!is_hermitian(config.measured, tol)) {
        throw Error(ErrorKind::not_hermitian, "measured operator h must be Hermitian");
    }

    SquareMatrix dynamics = config.dynamics;
    if (config.scale_coupling) {
        if (!(config.delta_t > 0.0)) throw Error(ErrorKind::degenerate_time, "scaled coupling needs delta_t > 0");
        dynamics = spin_flip_hamiltonian(config.energy, config.coupling_factor * config.hbar / config.delta_t);
    }
    require_same_dim(dynamics, config.measured, "repeated_measurement_experiment");

    const std::size_t n = config.measured.dim();
    const QuantumSystem measuring = QuantumSystem::euclidean(config.measured, constants);
    const Observable observable = validate_observable(config.measured, measuring, tol);
    if (!observable.simple_spectrum()) {
        throw Error(ErrorKind::degenerate, "repeated measurement needs a non-degenerate observable");
    }
    const QuantumSystem evolving(dynamics, MetricOperator::euclidean(n), constants, tol);
    const SquareMatrix step = propagator(evolving, config.delta_t);

    const MeasurementDistribution first = measurement_distribution(observable, measuring, Ray(config.psi0));
    const std::vector<double> p1 = probabilities(first);
    std::vector<std::vector<double>> p2;
    p2.reserve(first.outcomes.size());
    RepeatedMeasurementReport report;
    for (std::size_t k = 0; k < first.outcomes.size(); ++k) {
        const Vector evolved = step * first.outcomes[k].post.representative();
        const MeasurementDistribution second = measurement_distribution(observable, measuring, Ray(evolved));
        p2.push_back(probabilities(second));
        report.exact_repeat_probability += p1[k] * p2.back()[k];
    }

    std::vector<std::size_t> first_counts(p1.size(), 0);
    std::vector<std::size_t> second_counts(p1.size(), 0);
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
        UniformSource source(derive_seed(config.seed, trial));
        const std::size_t k1 = sample_index(p1, source.next());
        const std::size_t k2 = sample_index(p2[k1], source.next());
        ++first_counts[k1];
        ++second_counts[k2];
        if (k1 == k2) ++report.repeats;
    }
    report.delta_t = config.delta_t;
    report.trials = config.trials;
    report.seed = config.seed;
    report.repeat_probability = static_cast<double>(report.repeats) / static_cast<double>(config.trials);
    report.first_histogram = histogram(first, first_counts);
    report.outcome_histogram = histogram(first, second_counts);
    return report;
}

}  // namespace phqm
