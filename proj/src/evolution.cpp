#include "phqm/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "phqm/error.hpp"

namespace phqm {

SquareMatrix spin_flip_hamiltonian(double energy, double coupling, SpinFlipConvention convention) {
    if (convention == SpinFlipConvention::printed) return SquareMatrix{{energy, coupling}, {0.0, energy}};
    return SquareMatrix{{energy, 0.0}, {coupling, energy}};
}

SquareMatrix propagator(const QuantumSystem& sys, double t) {
    if (t == 0.0) return SquareMatrix::identity(sys.dim());
    return expm(sys.hamiltonian() * Complex(0.0, -t / sys.hbar()));
}

Vector propagate(const QuantumSystem& sys, std::span<const Complex> psi0, double t) {
    if (psi0.size() != sys.dim()) {
        throw Error(ErrorKind::dimension_mismatch, "propagate: state length " + std::to_string(psi0.size()) +
                                                       " vs dim " + std::to_string(sys.dim()));
    }
    if (norm2(psi0) == 0.0) throw Error(ErrorKind::zero_vector, "propagate: zero initial state");
    if (t == 0.0) return Vector(psi0.begin(), psi0.end());
    return propagator(sys, t) * psi0;
}

Trajectory make_trajectory(const QuantumSystem& sys, std::span<const Complex> psi0, double total_time,
                           std::size_t steps, double max_phase_step) {
    if (!(total_time >= 0.0) || !std::isfinite(total_time)) {
        throw Error(ErrorKind::invalid_argument, "trajectory length must be finite and >= 0");
    }
    if (!(max_phase_step > 0.0)) throw Error(ErrorKind::invalid_argument, "max_phase_step must be positive");
    steps = std::max<std::size_t>(steps, 1);
    const double needed = std::ceil(norm(sys.hamiltonian()) * total_time / (max_phase_step * sys.hbar()));
    if (!(needed <= 1e7)) throw Error(ErrorKind::overflow, "trajectory would need more than 1e7 steps");
    steps = std::max(steps, static_cast<std::size_t>(needed));

    Trajectory traj;
    traj.times.reserve(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = total_time * static_cast<double>(k) / static_cast<double>(steps);
        Vector psi = propagate(sys, psi0, t);
        traj.eta_norms.push_back(eta_norm(sys.metric(), psi));
        traj.euclid_norms.push_back(norm2(psi));
        traj.times.push_back(t);
        traj.vectors.push_back(std::move(psi));
    }
    return traj;
}

Ray spin_flip_closed_form(const SpinFlipParams& p) {
    validate(PhysicalConstants{p.hbar});
    const double x = p.coupling * p.time / p.hbar;
    if (x == 0.0) return Ray(Vector{1.0, 0.0});
    const double up = 1.0 / std::sqrt(1.0 + x * x);
    const double down = std::copysign(1.0 / std::sqrt(1.0 + 1.0 / (x * x)), x);
    return Ray(Vector{Complex(0.0, up), Complex(down, 0.0)});
}

FastFlipResidual fast_flip_residual(const SpinFlipParams& p) {
    if (p.time == 0.0 || p.coupling == 0.0) {
        throw Error(ErrorKind::degenerate_time, "fast flip needs a != 0 and t > 0");
    }
    if (p.time < 0.0) throw Error(ErrorKind::invalid_argument, "fast flip time must be positive");
    const Ray flipped = spin_flip_closed_form(p);
    const Vector down{0.0, 1.0};
    const double residual = ray_distance(MetricOperator::euclidean(2), down, flipped.representative());
    return {p.hbar / (std::abs(p.coupling) * p.time), residual};
}

namespace {

struct AngleParts {
    double sine;
    double cosine;
};

AngleParts angle_parts(const MetricOperator& eta, std::span<const Complex> psi, std::span<const Complex> phi) {
    const double psi_sq = inner(eta, psi, psi).real();
    const double phi_sq = inner(eta, phi, phi).real();
    if (!(psi_sq > 0.0) || !(phi_sq > 0.0)) throw Error(ErrorKind::zero_vector, "Fubini-Study angle of a zero vector");
    const Complex ov = inner(eta, psi, phi);
    const Complex c = ov / psi_sq;
    Vector perp(phi.begin(), phi.end());
    for (std::size_t i = 0; i < perp.size(); ++i) perp[i] -= c * psi[i];
    const double perp_norm = eta_norm(eta, perp);
    const double phi_norm = std::sqrt(phi_sq);
    return {perp_norm / phi_norm, std::abs(ov) / (std::sqrt(psi_sq) * phi_norm)};
}

}  // namespace

double fs_angle(const MetricOperator& eta, std::span<const Complex> psi, std::span<const Complex> phi) {
    const AngleParts p = angle_parts(eta, psi, phi);
    return std::atan2(p.sine, p.cosine);
}

double ray_distance(const MetricOperator& eta, std::span<const Complex> psi, std::span<const Complex> phi) {
    return std::sin(fs_angle(eta, psi, phi));
}

double energy_uncertainty(const QuantumSystem& sys, std::span<const Complex> psi) {
    const MetricOperator& eta = sys.metric();
    const Vector h_psi = sys.hamiltonian() * psi;
    const double psi_sq = inner(eta, psi, psi).real();
    if (!(psi_sq > 0.0)) throw Error(ErrorKind::zero_vector, "energy uncertainty of a zero vector");
    const double mean = inner(eta, psi, h_psi).real() / psi_sq;
    Vector spread = h_psi;
    for (std::size_t i = 0; i < spread.size(); ++i) spread[i] -= mean * psi[i];
    return eta_norm(eta, spread) / std::sqrt(psi_sq);
}

double evolution_speed(const QuantumSystem& sys, std::span<const Complex> psi) {
    if (!sys.closed()) {
        throw Error(ErrorKind::not_closed_system, "Hamiltonian is not Hermitian for the system metric");
    }
    return energy_uncertainty(sys, psi) / sys.hbar();
}

TravelTimeReport travel_time_report(const QuantumSystem& sys, std::span<const Complex> psi_i,
                                    std::span<const Complex> psi_f, double total_time, std::size_t steps) {
    if (!sys.closed()) {
        throw Error(ErrorKind::not_closed_system, "travel-time analysis needs a closed system");
    }
    const MetricOperator& eta = sys.metric();
    const MetricOperator flat = MetricOperator::euclidean(sys.dim());
    const EquivalenceMap map = equivalence_map(eta);

    TravelTimeReport r;
    r.eta_angle = fs_angle(eta, psi_i, psi_f);
    r.mapped_angle = fs_angle(flat, map.apply(psi_i), map.apply(psi_f));
    r.isometry_defect = std::abs(r.eta_angle - r.mapped_angle);
    r.initial_speed = evolution_speed(sys, psi_i);
    r.min_time_bound = r.initial_speed > 0.0 ? r.eta_angle / r.initial_speed
                                             : (r.eta_angle > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);

    const Trajectory traj = make_trajectory(sys, psi_i, total_time, steps);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        r.times.push_back(traj.times[k]);
        r.angle_from_start.push_back(fs_angle(eta, psi_i, traj.vectors[k]));
        r.angle_to_target.push_back(fs_angle(eta, traj.vectors[k], psi_f));
        r.speeds.push_back(evolution_speed(sys, traj.vectors[k]));
    }
    for (std::size_t k = 1; k < r.times.size(); ++k) {
        r.speed_integral += 0.5 * (r.speeds[k] + r.speeds[k - 1]) * (r.times[k] - r.times[k - 1]);
    }
    r.travelled_angle = r.angle_from_start.back();
    r.final_gap = r.angle_to_target.back();
    return r;
}

NormAudit eta_norm_audit(const Trajectory& traj, const QuantumSystem& sys) {
    NormAudit audit;
    if (traj.vectors.empty()) return audit;
    const double eta0 = eta_norm(sys.metric(), traj.vectors.front());
    const double euc0 = norm2(traj.vectors.front());
    for (const auto& psi : traj.vectors) {
        audit.max_eta_drift = std::max(audit.max_eta_drift, std::abs(eta_norm(sys.metric(), psi) / eta0 - 1.0));
        audit.max_euclid_drift = std::max(audit.max_euclid_drift, std::abs(norm2(psi) / euc0 - 1.0));
    }
    audit.final_euclid_growth = norm2(traj.vectors.back()) / euc0;
    return audit;
}

std::vector<AnisotropyPoint> no_evolution_sweep(double s, double theta, std::span<const double> sin_alphas,
                                                double tol) {
    if (std::sin(theta) == 0.0) throw Error(ErrorKind::invalid_argument, "theta must not be a multiple of pi");
    const MetricOperator flat = MetricOperator::euclidean(2);
    const Vector e1{1.0, 0.0};
    const Vector e2{0.0, 1.0};
    std::vector<AnisotropyPoint> out;
    out.reserve(sin_alphas.size());
    for (const double sa : sin_alphas) {
        if (!(sa >= 0.0 && sa < 1.0)) throw Error(ErrorKind::invalid_argument, "sin(alpha) must lie in [0, 1)");
        const double r = s * sa / std::sin(theta);
        const MetricOperator eta = metric_from_spectrum(pt_family(r, s, theta), tol);
        const auto ev = hermitian_eigenvalues(eta.matrix());
        const EquivalenceMap map = equivalence_map(eta);
        out.push_back({sa, ev.back() / ev.front(), fs_angle(eta, e1, e2),
                       fs_angle(flat, map.apply(e1), map.apply(e2))});
    }
    return out;
}

}  // namespace phqm
