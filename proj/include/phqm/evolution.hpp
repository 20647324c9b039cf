#pragma once
// Schrodinger propagation, eta-unitarity audits, the fast spin flip and
// Fubini-Study travel-time geometry.

#include <span>
#include <vector>

#include "phqm/qsystem.hpp"

namespace phqm {

/// Which triangle carries the coupling a in the 2x2 Jordan-type generator.
/// transpose: [[E, 0], [a, E]] moves (1, 0) towards (0, 1).
/// printed:   [[E, a], [0, E]] leaves (1, 0) fixed (it is an eigenvector).
enum class SpinFlipConvention { transpose, printed };

SquareMatrix spin_flip_hamiltonian(double energy, double coupling,
                                   SpinFlipConvention convention = SpinFlipConvention::transpose);

/// exp(-i H t / hbar)
SquareMatrix propagator(const QuantumSystem& sys, double t);

/// exp(-i H t / hbar) psi0; returns psi0 unchanged for t == 0.
Vector propagate(const QuantumSystem& sys, std::span<const Complex> psi0, double t);

struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> vectors;
    std::vector<double> eta_norms;
    std::vector<double> euclid_norms;
};

/// Uniform grid on [0, total_time]. The step count is raised if needed so that
/// ||H|| dt / hbar <= max_phase_step.
Trajectory make_trajectory(const QuantumSystem& sys, std::span<const Complex> psi0, double total_time,
                           std::size_t steps, double max_phase_step = 0.1);

struct SpinFlipParams {
    double energy = 0.0;
    double coupling = 0.0;
    double time = 0.0;
    double hbar = 1.0;
};

/// Closed-form evolved ray of (1, 0) under the transpose-convention generator,
/// represented by (i (1 + x^2)^{-1/2}, sgn(x) (1 + x^{-2})^{-1/2}) with
/// x = a t / hbar. Ray of (1, 0) at x == 0.
Ray spin_flip_closed_form(const SpinFlipParams& p);

struct FastFlipResidual {
    double epsilon;   // hbar / (|a| t)
    double residual;  // sine of the Fubini-Study angle to (0, 1)
};

/// Throws DegenerateTime for t == 0 or a == 0.
FastFlipResidual fast_flip_residual(const SpinFlipParams& p);

/// Fubini-Study angle in [0, pi/2] under the metric. Computed as
/// atan2(|perpendicular part|, |overlap|) to stay accurate near 0.
/// Throws ZeroVector.
double fs_angle(const MetricOperator& eta, std::span<const Complex> psi, std::span<const Complex> phi);

/// sin(fs_angle): norm of the part of phi (normalized) orthogonal to psi.
double ray_distance(const MetricOperator& eta, std::span<const Complex> psi, std::span<const Complex> phi);

/// Delta H = ||(H - <H>) psi||_eta / ||psi||_eta for a closed system.
double energy_uncertainty(const QuantumSystem& sys, std::span<const Complex> psi);

/// Fubini-Study speed Delta H / hbar. Throws NotClosedSystem.
double evolution_speed(const QuantumSystem& sys, std::span<const Complex> psi);

struct TravelTimeReport {
    double eta_angle = 0.0;          // endpoints, system metric
    double mapped_angle = 0.0;       // rho psi_i vs rho psi_f, Euclidean
    double isometry_defect = 0.0;    // |eta_angle - mapped_angle|
    double initial_speed = 0.0;      // Delta H / hbar at psi_i
    double min_time_bound = 0.0;     // eta_angle / initial_speed
    double travelled_angle = 0.0;    // psi_i vs psi(T)
    double speed_integral = 0.0;     // trapezoid of the speed over [0, T]
    double final_gap = 0.0;          // psi(T) vs psi_f
    std::vector<double> times;
    std::vector<double> angle_from_start;
    std::vector<double> angle_to_target;
    std::vector<double> speeds;
};

/// Propagates psi_i for total_time and compares the path with the endpoint
/// geometry. Throws NotClosedSystem.
TravelTimeReport travel_time_report(const QuantumSystem& sys, std::span<const Complex> psi_i,
                                    std::span<const Complex> psi_f, double total_time, std::size_t steps);

struct NormAudit {
    double max_eta_drift = 0.0;     // max |  ||psi(t)||_eta / ||psi0||_eta - 1 |
    double max_euclid_drift = 0.0;  // same for the Euclidean norm
    double final_euclid_growth = 1.0;
};

NormAudit eta_norm_audit(const Trajectory& traj, const QuantumSystem& sys);

struct AnisotropyPoint {
    double sin_alpha;         // r sin(theta) / s
    double metric_condition;  // largest / smallest eigenvalue of eta
    double eta_angle;         // e1 vs e2 under eta
    double mapped_angle;      // rho e1 vs rho e2, Euclidean
};

/// pt_family(r, s, theta) with r = s sin(alpha) / sin(theta) for each sin(alpha)
/// in [0, 1): the metric from metric_from_spectrum and the angle between the
/// basis vectors (1, 0) and (0, 1) under it.
std::vector<AnisotropyPoint> no_evolution_sweep(double s, double theta, std::span<const double> sin_alphas,
                                                double tol = kDefaultTol);

}  // namespace phqm
