#include "phqm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "phqm/composite.hpp"
#include "phqm/error.hpp"
#include "phqm/random.hpp"
#include "phqm/verify.hpp"

namespace phqm::cli {
namespace {

struct ParamSpec {
    std::string key;
    ParamValue fallback;
    std::string help;
};

const std::vector<ParamSpec>& schema(Command c) {
    static const std::vector<ParamSpec> spinflip{
        {"E", 0.0, "diagonal energy E"},
        {"a", 100.0, "coupling a"},
        {"t", 1.0, "evolution time"},
        {"hbar", 1.0, "reduced Planck constant"},
        {"steps", std::int64_t{50}, "time-series samples"},
        {"convention", std::string("transpose"), "generator layout: transpose | printed"},
    };
    static const std::vector<ParamSpec> equivalence{
        {"dim", std::int64_t{4}, "largest dimension (cycles 2..dim)"},
        {"cases", std::int64_t{50}, "random instances"},
    };
    static const std::vector<ParamSpec> brachistochrone{
        {"s", 1.0, "off-diagonal coupling of the 2x2 family"},
        {"theta", std::numbers::pi / 2, "diagonal phase of the 2x2 family"},
        {"points", std::int64_t{12}, "anisotropy sweep points"},
        {"max-sin", 0.999, "largest sin(alpha) in the sweep"},
        {"gap-min", 0.5, "smallest Hermitian gap"},
        {"gap-max", 8.0, "largest Hermitian gap"},
        {"gaps", std::int64_t{5}, "Hermitian gap sweep points"},
        {"steps", std::int64_t{200}, "trajectory samples"},
        {"hbar", 1.0, "reduced Planck constant"},
    };
    static const std::vector<ParamSpec> composite{
        {"mode", std::string("scaled"), "coupling protocol: scaled | fixed"},
        {"c", 10.0, "a * delta_t / hbar in scaled mode"},
        {"a", 100.0, "coupling in fixed mode"},
        {"E", 0.0, "diagonal energy of the fast-flip generator"},
        {"delta-t", 0.01, "largest interval between measurements"},
        {"decades", std::int64_t{4}, "decades spanned by the delta_t sweep"},
        {"trials", std::int64_t{10000}, "Monte-Carlo trials per delta_t"},
        {"sin-alpha", 0.6, "non-Hermiticity of the energy-audit Hamiltonian"},
        {"T", 10.0, "energy audit duration"},
        {"steps", std::int64_t{400}, "energy audit samples"},
        {"hbar", 1.0, "reduced Planck constant"},
    };
    static const std::vector<ParamSpec> verify{
        {"dim", std::int64_t{6}, "largest dimension (cycles 2..dim)"},
        {"cases", std::int64_t{200}, "random instances"},
    };
    switch (c) {
        case Command::spinflip: return spinflip;
        case Command::equivalence: return equivalence;
        case Command::brachistochrone: return brachistochrone;
        case Command::composite: return composite;
        case Command::verify: return verify;
    }
    throw ConfigError("unknown command");
}

// Resolved parameters: defaults overlaid by the configuration, type-checked.
class Params {
public:
    explicit Params(const RunConfig& cfg) {
        const auto& specs = schema(cfg.command);
        for (const auto& s : specs) values_[s.key] = s.fallback;
        for (const auto& [key, value] : cfg.params) {
            auto it = std::find_if(specs.begin(), specs.end(), [&](const ParamSpec& s) { return s.key == key; });
            if (it == specs.end()) {
                throw ConfigError("unknown parameter '" + key + "' for command " +
                                  std::string(command_name(cfg.command)));
            }
            const bool widen = std::holds_alternative<double>(it->fallback) && std::holds_alternative<std::int64_t>(value);
            if (widen) {
                values_[key] = static_cast<double>(std::get<std::int64_t>(value));
            } else if (value.index() != it->fallback.index()) {
                throw ConfigError("parameter '" + key + "' has the wrong type");
            } else {
                values_[key] = value;
            }
        }
        for (const auto& s : specs) order_.push_back(s.key);
    }

    double real(const std::string& key) const {
        const double v = std::get<double>(values_.at(key));
        if (!std::isfinite(v)) throw ConfigError("parameter '" + key + "' must be finite");
        return v;
    }
    double positive(const std::string& key) const {
        const double v = real(key);
        if (!(v > 0.0)) throw ConfigError("parameter '" + key + "' must be positive");
        return v;
    }
    std::size_t count(const std::string& key, std::int64_t min = 1) const {
        const auto v = std::get<std::int64_t>(values_.at(key));
        if (v < min) throw ConfigError("parameter '" + key + "' must be >= " + std::to_string(min));
        return static_cast<std::size_t>(v);
    }
    const std::string& text(const std::string& key) const { return std::get<std::string>(values_.at(key)); }

    Json to_json() const {
        Json j = Json::object();
        for (const auto& key : order_) {
            std::visit([&](const auto& v) { j[key] = v; }, values_.at(key));
        }
        return j;
    }

private:
    std::map<std::string, ParamValue> values_;
    std::vector<std::string> order_;
};

std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g;
    for (std::size_t k = 0; k < n; ++k) {
        const double f = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
        g.push_back(lo * std::pow(hi / lo, f));
    }
    return g;
}

// ---------------------------------------------------------------------------
// spinflip

void run_spinflip(const Params& p, const RunConfig& cfg, ExperimentReport& report) {
    const double energy = p.real("E");
    const double coupling = p.real("a");
    const double time = p.real("t");
    const double hbar = p.positive("hbar");
    const std::size_t steps = p.count("steps");
    if (time < 0.0) throw ConfigError("parameter 't' must be >= 0");
    SpinFlipConvention convention;
    if (p.text("convention") == "transpose") {
        convention = SpinFlipConvention::transpose;
    } else if (p.text("convention") == "printed") {
        convention = SpinFlipConvention::printed;
    } else {
        throw ConfigError("convention must be 'transpose' or 'printed'");
    }

    const QuantumSystem sys =
        QuantumSystem::euclidean(spin_flip_hamiltonian(energy, coupling, convention), PhysicalConstants{hbar});
    const MetricOperator flat = MetricOperator::euclidean(2);
    const Vector up{1.0, 0.0};
    const Vector down{0.0, 1.0};
    const SpinFlipParams params{energy, coupling, time, hbar};
    const double x = coupling * time / hbar;

    const Vector evolved = propagate(sys, up, time);
    const Ray closed = spin_flip_closed_form(params);
    const double closed_distance = fs_angle(flat, evolved, closed.representative());
    const double growth = norm2(evolved);
    const double expected_growth = std::sqrt(1.0 + x * x);

    report.scalar("x", x);
    report.scalar("closed_form_distance", closed_distance);
    report.scalar("closed_form_up", closed.representative()[0]);
    report.scalar("closed_form_down", closed.representative()[1]);
    report.scalar("norm_growth", growth);
    report.scalar("expected_norm_growth", expected_growth);
    report.flag("closed_form_matches_propagator", closed_distance <= 1e-10);
    report.flag("norm_growth_law", std::abs(growth - expected_growth) <= 1e-8 * std::max(1.0, expected_growth));

    if (coupling != 0.0 && time > 0.0) {
        const FastFlipResidual r = fast_flip_residual(params);
        const double exact = 1.0 / std::sqrt(1.0 + x * x);
        const double propagated_residual = ray_distance(flat, down, evolved);
        report.scalar("epsilon", r.epsilon);
        report.scalar("residual", r.residual);
        report.scalar("residual_exact", exact);
        report.scalar("propagated_residual", propagated_residual);
        report.flag("residual_law", std::abs(r.residual - exact) <= 1e-12);
        if (r.epsilon <= 0.1) report.flag("residual_within_2eps", propagated_residual <= 2.0 * r.epsilon);
    }

    const Trajectory traj = make_trajectory(sys, up, time, steps);
    std::vector<double> residual, p_down, euclid, cf_dist;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const Vector& psi = traj.vectors[k];
        residual.push_back(ray_distance(flat, down, psi));
        p_down.push_back(std::norm(psi[1]) / std::pow(traj.euclid_norms[k], 2));
        euclid.push_back(traj.euclid_norms[k]);
        const SpinFlipParams at{energy, coupling, traj.times[k], hbar};
        cf_dist.push_back(fs_angle(flat, psi, spin_flip_closed_form(at).representative()));
    }
    report.column("t", traj.times);
    report.column("p_down", std::move(p_down));
    report.column("residual", std::move(residual));
    report.column("euclid_norm", std::move(euclid));
    report.column("closed_form_distance", std::move(cf_dist));
    (void)cfg;
}

// ---------------------------------------------------------------------------
// equivalence

void run_equivalence(const Params& p, const RunConfig& cfg, ExperimentReport& report) {
    const std::size_t max_dim = p.count("dim", 2);
    const std::size_t cases = p.count("cases");
    const double tol = cfg.tol;
    const MetricOperator* unused = nullptr;
    (void)unused;

    std::vector<double> dims, herm_defect, spectrum_err, dist_err, sum_err, scale_err, iso_err, exp_err;
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = 2 + c % (max_dim - 1);
        Rng rng(derive_seed(cfg.seed, c));
        const auto inst = random_quasi_hermitian(n, rng);
        const Hermitization herm = hermitize(inst.hamiltonian, inst.eta, tol);
        const QuantumSystem sys(inst.hamiltonian, inst.eta, {}, tol);
        const QuantumSystem flat = QuantumSystem::euclidean(herm.h);
        const Observable obs = validate_observable(inst.hamiltonian, sys, tol);
        const Observable hobs = validate_observable(herm.h, flat, tol);

        const Vector psi = random_vector(n, rng);
        const Vector phi = random_vector(n, rng);
        std::normal_distribution<double> g;
        const Complex scale{g(rng), g(rng)};

        const auto dist = measurement_distribution(obs, sys, Ray(psi));
        const auto scaled = measurement_distribution(obs, sys, Ray(scale * psi));
        const auto born = measurement_distribution(hobs, flat, Ray(herm.map.apply(psi)));
        double d_err = 0.0, s_err = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            d_err = std::max(d_err, std::abs(dist.outcomes[k].probability - born.outcomes[k].probability));
            s_err = std::max(s_err, std::abs(dist.outcomes[k].probability - scaled.outcomes[k].probability));
        }
        dims.push_back(static_cast<double>(n));
        herm_defect.push_back(hermiticity_defect(herm.h));
        spectrum_err.push_back(spectrum_distance(eigenvalues(herm.h), eigenvalues(inst.hamiltonian)));
        dist_err.push_back(d_err);
        sum_err.push_back(std::abs(dist.total_probability() - 1.0));
        scale_err.push_back(s_err);
        iso_err.push_back(std::abs(fs_angle(inst.eta, psi, phi) -
                                   fs_angle(MetricOperator::euclidean(n), herm.map.apply(psi), herm.map.apply(phi))));
        exp_err.push_back(std::abs(expectation(obs, sys, Ray(psi)) - expectation(hobs, flat, Ray(herm.map.apply(psi)))));
    }
    auto worst = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
    struct Check {
        const char* name;
        const std::vector<double>* values;
        double limit;
    };
    const Check checks[] = {
        {"hermitization_defect", &herm_defect, 1e-10}, {"spectrum_preserved", &spectrum_err, 1e-8},
        {"distribution_equivalence", &dist_err, 1e-10}, {"probability_sum", &sum_err, 1e-12},
        {"ray_scale_invariance", &scale_err, 1e-12},   {"fs_isometry", &iso_err, 1e-12},
        {"expectation_equivalence", &exp_err, 1e-10},
    };
    for (const auto& ch : checks) {
        report.scalar(std::string("max_") + ch.name, worst(*ch.values));
        report.flag(ch.name, worst(*ch.values) <= ch.limit);
    }
    report.column("dim", std::move(dims));
    report.column("hermitization_defect", std::move(herm_defect));
    report.column("spectrum_error", std::move(spectrum_err));
    report.column("distribution_error", std::move(dist_err));
    report.column("probability_sum_error", std::move(sum_err));
    report.column("scale_error", std::move(scale_err));
    report.column("isometry_error", std::move(iso_err));
    report.column("expectation_error", std::move(exp_err));
}

// ---------------------------------------------------------------------------
// brachistochrone

void run_brachistochrone(const Params& p, const RunConfig& cfg, ExperimentReport& report) {
    const double s = p.positive("s");
    const double theta = p.real("theta");
    const std::size_t points = p.count("points", 2);
    const double max_sin = p.real("max-sin");
    if (!(max_sin > 0.0 && max_sin < 1.0)) throw ConfigError("max-sin must lie in (0, 1)");
    const double gap_min = p.positive("gap-min");
    const double gap_max = p.positive("gap-max");
    const std::size_t gaps = p.count("gaps");
    const std::size_t steps = p.count("steps");
    const double hbar = p.positive("hbar");
    if (std::sin(theta) == 0.0) throw ConfigError("theta must not be a multiple of pi");

    const Vector e1{1.0, 0.0};
    const Vector e2{0.0, 1.0};

    // Hermitian reference: resonant (omega/2) sigma_x drives e1 to e2.
    double worst_saturation = 0.0, worst_gap = 0.0, worst_length = 0.0;
    bool bound_ok = true;
    for (const double omega : geometric_grid(gap_min, gap_max, gaps)) {
        const SquareMatrix h{{0.0, omega / 2}, {omega / 2, 0.0}};
        const QuantumSystem sys = QuantumSystem::euclidean(h, PhysicalConstants{hbar});
        const double total = std::numbers::pi * hbar / omega;
        const TravelTimeReport r = travel_time_report(sys, e1, e2, total, steps);
        const double product = total * r.initial_speed;
        worst_saturation = std::max(worst_saturation, std::abs(product - std::numbers::pi / 2));
        worst_gap = std::max(worst_gap, r.final_gap);
        worst_length = std::max(worst_length, r.travelled_angle - r.speed_integral);
        bound_ok = bound_ok && product >= std::numbers::pi / 2 - 1e-8;
    }
    report.scalar("hermitian_saturation_error", worst_saturation);
    report.scalar("hermitian_final_gap", worst_gap);
    report.flag("hermitian_bound", bound_ok);
    report.flag("hermitian_bound_saturated", worst_saturation <= 1e-8 && worst_gap <= 1e-6);
    report.flag("path_length_bound", worst_length <= 1e-8);

    // Quasi-Hermitian family approaching the exceptional point.
    std::vector<double> sins;
    for (std::size_t k = 0; k < points; ++k) {
        sins.push_back(max_sin * static_cast<double>(k) / static_cast<double>(points - 1));
    }
    const auto sweep = no_evolution_sweep(s, theta, sins, cfg.tol);
    std::vector<double> cond, eta_angle, mapped, min_time, speed, length_gap, iso;
    bool monotone = true;
    double worst_iso = 0.0, worst_family_length = 0.0;
    for (std::size_t k = 0; k < sweep.size(); ++k) {
        const auto& pt = sweep[k];
        const double r = s * pt.sin_alpha / std::sin(theta);
        const SquareMatrix hq = pt_family(r, s, theta);
        const QuantumSystem sys(hq, metric_from_spectrum(hq, cfg.tol), PhysicalConstants{hbar}, cfg.tol);
        const double v = evolution_speed(sys, e1);
        const double t_min = pt.eta_angle / v;
        const TravelTimeReport tr = travel_time_report(sys, e1, e2, t_min, steps);
        cond.push_back(pt.metric_condition);
        eta_angle.push_back(pt.eta_angle);
        mapped.push_back(pt.mapped_angle);
        min_time.push_back(t_min);
        speed.push_back(v);
        length_gap.push_back(tr.speed_integral - tr.travelled_angle);
        iso.push_back(std::abs(pt.eta_angle - pt.mapped_angle));
        worst_iso = std::max(worst_iso, iso.back());
        worst_family_length = std::max(worst_family_length, tr.travelled_angle - tr.speed_integral);
        if (k > 0 && !(mapped[k] < mapped[k - 1])) monotone = false;
    }
    report.scalar("family_max_isometry_error", worst_iso);
    report.scalar("family_final_mapped_angle", mapped.back());
    report.scalar("family_final_metric_condition", cond.back());
    report.flag("fs_isometry", worst_iso <= 1e-12);
    report.flag("mapped_angle_decreasing", monotone);
    report.flag("family_path_length_bound", worst_family_length <= 1e-8);

    report.column("sin_alpha", std::move(sins));
    report.column("metric_condition", std::move(cond));
    report.column("eta_angle", std::move(eta_angle));
    report.column("mapped_angle", std::move(mapped));
    report.column("speed", std::move(speed));
    report.column("min_travel_time", std::move(min_time));
    report.column("length_minus_angle", std::move(length_gap));
}

// ---------------------------------------------------------------------------
// composite

void run_composite(const Params& p, const RunConfig& cfg, ExperimentReport& report) {
    const std::string& mode = p.text("mode");
    if (mode != "scaled" && mode != "fixed") throw ConfigError("mode must be 'scaled' or 'fixed'");
    const double c = p.real("c");
    const double coupling = p.real("a");
    const double energy = p.real("E");
    const double delta_t = p.positive("delta-t");
    const std::size_t decades = p.count("decades", 0);
    const std::size_t trials = p.count("trials");
    const double sin_alpha = p.real("sin-alpha");
    if (!(sin_alpha > 0.0 && sin_alpha < 1.0)) throw ConfigError("sin-alpha must lie in (0, 1)");
    const double total = p.positive("T");
    const std::size_t steps = p.count("steps");
    const double hbar = p.positive("hbar");
    const double tol = cfg.tol;

    // Energy audit on a non-Hermitian member of the 2x2 family.
    const SquareMatrix big_h = pt_family(sin_alpha, 1.0, std::numbers::pi / 2);
    const MetricOperator eta = metric_from_spectrum(big_h, tol);
    const Hermitization herm = hermitize(big_h, eta, tol);
    Rng rng(derive_seed(cfg.seed, 0xE7E));
    const Vector psi0 = random_vector(2, rng);
    const EnergyAudit audit = energy_conservation_audit(big_h, herm.h, eta, psi0, total, steps, hbar, tol);
    report.scalar("eta_energy_drift", audit.eta_energy_drift);
    report.scalar("hermitian_energy_drift", audit.euclid_energy_drift);
    report.flag("eta_energy_conserved", audit.eta_energy_drift <= 1e-8);
    report.flag("hermitian_energy_not_conserved", audit.euclid_energy_drift >= 1e-3);

    // Heisenberg picture: H is a fixed point of its own similarity flow, h is not.
    const SquareMatrix h_t = heisenberg_evolve(herm.h, big_h, total / 3.0, HeisenbergConvention::similarity, hbar);
    const SquareMatrix big_h_t = heisenberg_evolve(big_h, big_h, total / 3.0, HeisenbergConvention::similarity, hbar);
    report.scalar("heisenberg_h_hermiticity_defect", hermiticity_defect(h_t));
    report.scalar("heisenberg_H_drift", norm(big_h_t - big_h) / norm(big_h));
    report.flag("heisenberg_generator_fixed", norm(big_h_t - big_h) <= 1e-10 * norm(big_h));

    // Repeated energy measurements with h = S_z on (1, 0).
    const SquareMatrix sz = SquareMatrix::diagonal({1.0, -1.0});
    const Vector up{1.0, 0.0};
    std::vector<double> dts, probs, exact, sigmas;
    bool within = true;
    for (std::size_t k = 0; k <= decades; ++k) {
        const double dt = delta_t * std::pow(10.0, -static_cast<double>(k));
        RepeatedMeasurementConfig rc{spin_flip_hamiltonian(energy, coupling), sz, up, dt, mode == "scaled",
                                     c, energy, trials, derive_seed(cfg.seed, 0x5EED, k), hbar};
        const auto rep = repeated_measurement_experiment(rc, tol);
        const double sigma = std::sqrt(rep.exact_repeat_probability * (1.0 - rep.exact_repeat_probability) /
                                       static_cast<double>(trials));
        within = within && std::abs(rep.repeat_probability - rep.exact_repeat_probability) <= 3.0 * sigma + 1e-15;
        dts.push_back(dt);
        probs.push_back(rep.repeat_probability);
        exact.push_back(rep.exact_repeat_probability);
        sigmas.push_back(sigma);
    }
    report.flag("repeat_probability_within_3sigma", within);
    if (mode == "scaled") {
        const double expected = 1.0 / (1.0 + c * c);
        const double sigma = std::sqrt(expected * (1.0 - expected) / static_cast<double>(trials));
        const auto [lo, hi] = std::minmax_element(probs.begin(), probs.end());
        report.scalar("expected_repeat_probability", expected);
        report.scalar("repeat_probability_spread", *hi - *lo);
        bool flat = true;
        for (const double q : probs) flat = flat && std::abs(q - expected) <= 3.0 * sigma;
        report.flag("repeat_probability_flat", flat);
    }

    RepeatedMeasurementConfig base{sz, sz, up, delta_t, false, c, energy, trials,
                                   derive_seed(cfg.seed, 0xBA5E), hbar};
    const auto baseline = repeated_measurement_experiment(base, tol);
    report.scalar("baseline_repeat_probability", baseline.repeat_probability);
    report.flag("baseline_repeat_is_one", baseline.repeats == baseline.trials);

    report.column("delta_t", std::move(dts));
    report.column("repeat_probability", std::move(probs));
    report.column("exact_repeat_probability", std::move(exact));
    report.column("sigma", std::move(sigmas));
}

// ---------------------------------------------------------------------------

void run_verify(const Params& p, const RunConfig& cfg, ExperimentReport& report) {
    VerifyOptions opt{p.count("dim", 2), p.count("cases"), cfg.seed, cfg.tol};
    ExperimentReport inner = verify_invariants(opt);
    for (const auto& [name, value] : inner.scalars().items()) report.scalar(name, value);
    for (const auto& [name, values] : inner.series()) report.column(name, values);
    for (const auto& [name, pass] : inner.flags()) report.flag(name, pass);
}

}  // namespace

std::string_view command_name(Command c) {
    switch (c) {
        case Command::spinflip: return "spinflip";
        case Command::equivalence: return "equivalence";
        case Command::brachistochrone: return "brachistochrone";
        case Command::composite: return "composite";
        case Command::verify: return "verify";
    }
    return "unknown";
}

ExperimentReport build_report(const RunConfig& config) {
    if (!(config.tol > 0.0) || !std::isfinite(config.tol)) throw ConfigError("tol must be positive");
    const Params params(config);
    ExperimentReport report{std::string(command_name(config.command))};
    Json& echo = report.config();
    echo["params"] = params.to_json();
    echo["seed"] = config.seed;
    echo["tol"] = config.tol;
    echo["format"] = config.format == Format::json ? "json" : "csv";
    switch (config.command) {
        case Command::spinflip: run_spinflip(params, config, report); break;
        case Command::equivalence: run_equivalence(params, config, report); break;
        case Command::brachistochrone: run_brachistochrone(params, config, report); break;
        case Command::composite: run_composite(params, config, report); break;
        case Command::verify: run_verify(params, config, report); break;
    }
    return report;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    std::optional<ExperimentReport> report;
    try {
        report.emplace(build_report(config));
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }

    const std::string text = config.format == Format::json ? emit_json(*report) : emit_csv(*report);
    if (config.output_path == "-") {
        out << text;
    } else {
        std::ofstream file(config.output_path, std::ios::binary);
        if (!file) {
            err << "config error: cannot open " << config.output_path << "\n";
            return kExitConfig;
        }
        file << text;
    }
    if (!report->all_pass()) {
        for (const auto& name : report->failures()) err << "invariant failed: " << name << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pseudo-Hermitian quantum mechanics toolkit", "phqm"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    RunConfig cfg;
    std::string format = "json";
    std::map<std::string, std::string> raw;  // key -> text, only for options given
    struct Sub {
        Command command;
        CLI::App* app;
    };
    std::vector<Sub> subs;
    const std::pair<Command, const char*> commands[] = {
        {Command::spinflip, "fast spin flip under the Jordan-type generator"},
        {Command::equivalence, "Hermitization and measurement equivalence on random instances"},
        {Command::brachistochrone, "travel-time geometry and the no-evolution limit"},
        {Command::composite, "energy audit and repeated measurements in the composite scheme"},
        {Command::verify, "randomized invariant suites of every module"},
    };
    for (const auto& [command, description] : commands) {
        CLI::App* sub = app.add_subcommand(std::string(command_name(command)), description);
        sub->add_option("--seed", cfg.seed, "64-bit master seed");
        sub->add_option("--tol", cfg.tol, "relative tolerance");
        sub->add_option("--output,-o", cfg.output_path, "report path, '-' for stdout");
        sub->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
        for (const auto& spec : schema(command)) {
            sub->add_option_function<std::string>(
                "--" + spec.key, [&raw, key = spec.key](const std::string& v) { raw[key] = v; }, spec.help);
        }
        subs.push_back({command, sub});
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream help;
        app.exit(e, help, help);
        out << help.str();
        return kExitOk;
    } catch (const CLI::CallForVersion& e) {
        out << kVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    for (const auto& s : subs) {
        if (s.app->parsed()) cfg.command = s.command;
    }
    cfg.format = format == "csv" ? Format::csv : Format::json;

    try {
        for (const auto& spec : schema(cfg.command)) {
            auto it = raw.find(spec.key);
            if (it == raw.end()) continue;
            const std::string& text = it->second;
            std::size_t used = 0;
            if (std::holds_alternative<double>(spec.fallback)) {
                const double v = std::stod(text, &used);
                if (used != text.size()) throw std::invalid_argument(text);
                cfg.params[spec.key] = v;
            } else if (std::holds_alternative<std::int64_t>(spec.fallback)) {
                const long long v = std::stoll(text, &used);
                if (used != text.size()) throw std::invalid_argument(text);
                cfg.params[spec.key] = static_cast<std::int64_t>(v);
            } else if (std::holds_alternative<bool>(spec.fallback)) {
                cfg.params[spec.key] = text == "true" || text == "1";
            } else {
                cfg.params[spec.key] = text;
            }
        }
    } catch (const std::exception&) {
        err << "config error: malformed numeric parameter\n";
        return kExitConfig;
    }
    return run(cfg, out, err);
}

}  // namespace phqm::cli
