#include "dephase/runner.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "dephase/decoherence.hpp"
#include "dephase/oracle.hpp"
#include "dephase/planner.hpp"

namespace dephase {

namespace {

using nlohmann::json;

void write_environment_comments(const ExperimentConfig& config, std::ostream& out) {
    const EnvironmentSpec env = config.environment();
    out << "# alpha=" << format_number(env.alpha, config.precision)
        << " omega_c=" << format_number(env.omega_c, config.precision)
        << " ohmicity_n=" << format_number(env.ohmicity_n, config.precision)
        << " temperature=" << format_number(env.temperature, config.precision) << "\n";
    if (config.omega_c_explicit)
        out << "# absolute units: frequencies in the supplied omega_c scale, times in its inverse\n";
    else
        out << "# dimensionless units: frequencies in omega_c, times in 1/omega_c\n";
    if (env.temperature > 0.0)
        out << "# time axes: omega_c*t = t*" << format_number(env.omega_c, config.precision)
            << ", T*t = t*" << format_number(env.temperature, config.precision) << "\n";
}

json result_to_json(const DecoherenceResult& r, int precision) {
    // Round through the declared precision so CSV and JSON agree digit-for-digit.
    auto num = [precision](double v) { return json::parse(format_number(v, precision)); };
    return json{{"gamma_total", num(r.gamma_total)},
                {"gamma_vacuum", num(r.gamma_vacuum)},
                {"gamma_thermal", num(r.gamma_thermal)},
                {"coherence", num(r.coherence)},
                {"quad_err", num(r.quadrature_error_estimate)}};
}

}  // namespace

int run_curve(const ExperimentConfig& config, std::ostream& out, std::ostream& diag) {
    const EnvironmentSpec env = config.environment();
    const std::vector<double> grid = config.time_grid();
    const std::vector<CurvePoint> points = decoherence_curve(env, grid, config.quadrature);
    const int p = config.precision;

    bool all_converged = true;
    if (config.format == OutputFormat::csv) {
        write_environment_comments(config, out);
        out << "t,omega_c_t,gamma_total,gamma_vacuum,gamma_thermal,coherence,quad_err\n";
        for (const CurvePoint& point : points) {
            const DecoherenceResult& r = point.result;
            out << format_number(point.t, p) << "," << format_number(env.omega_c * point.t, p) << ","
                << format_number(r.gamma_total, p) << "," << format_number(r.gamma_vacuum, p) << ","
                << format_number(r.gamma_thermal, p) << "," << format_number(r.coherence, p) << ","
                << format_number(r.quadrature_error_estimate, p) << "\n";
            if (!point.converged) {
                out << "# WARNING: quadrature did not converge at t=" << format_number(point.t, p) << "\n";
                all_converged = false;
            }
        }
    } else {
        json rows = json::array();
        for (const CurvePoint& point : points) {
            json row = result_to_json(point.result, p);
            row["t"] = json::parse(format_number(point.t, p));
            row["omega_c_t"] = json::parse(format_number(env.omega_c * point.t, p));
            row["converged"] = point.converged;
            if (!point.converged) all_converged = false;
            rows.push_back(row);
        }
        out << rows.dump(2) << "\n";
    }
    if (!all_converged) {
        diag << "curve: one or more grid points did not converge\n";
        return kExitNumericalFailure;
    }
    return kExitOk;
}

int run_pulse_scan(const ExperimentConfig& config, std::ostream& out, std::ostream& diag) {
    const EnvironmentSpec env = config.environment();
    const int p = config.precision;

    DecoherenceResult unperturbed;
    bool unperturbed_converged = true;
    try {
        unperturbed = gamma_unperturbed(env, config.time, config.quadrature);
    } catch (const QuadratureError& failure) {
        unperturbed = failure.partial;
        unperturbed_converged = false;
    }

    const std::vector<PulseScanPoint> points =
        pulse_frequency_scan(env, config.time, config.n_list, config.quadrature);

    bool all_converged = unperturbed_converged;
    if (config.format == OutputFormat::csv) {
        write_environment_comments(config, out);
        out << "# t=" << format_number(config.time, p) << "\n";
        out << "# unperturbed gamma=" << format_number(unperturbed.gamma_total, p) << "\n";
        out << "N,delta_t,tau_c_over_dt,gamma_total,coherence,quad_err\n";
        for (const PulseScanPoint& point : points) {
            out << point.cycles << "," << format_number(point.delta_t, p) << ","
                << format_number(point.tau_c_over_dt, p) << ","
                << format_number(point.result.gamma_total, p) << ","
                << format_number(point.result.coherence, p) << ","
                << format_number(point.result.quadrature_error_estimate, p) << "\n";
            if (!point.converged) {
                out << "# WARNING: quadrature did not converge at N=" << point.cycles << "\n";
                all_converged = false;
            }
        }
    } else {
        json doc;
        doc["t"] = json::parse(format_number(config.time, p));
        doc["unperturbed"] = result_to_json(unperturbed, p);
        json rows = json::array();
        for (const PulseScanPoint& point : points) {
            json row = result_to_json(point.result, p);
            row["N"] = point.cycles;
            row["delta_t"] = json::parse(format_number(point.delta_t, p));
            row["tau_c_over_dt"] = json::parse(format_number(point.tau_c_over_dt, p));
            row["converged"] = point.converged;
            if (!point.converged) all_converged = false;
            rows.push_back(row);
        }
        doc["points"] = rows;
        out << doc.dump(2) << "\n";
    }
    if (!all_converged) {
        diag << "pulse-scan: one or more points did not converge\n";
        return kExitNumericalFailure;
    }
    return kExitOk;
}

int run_plan(const ExperimentConfig& config, std::ostream& out) {
    const EnvironmentSpec env = config.environment();
    const RegimeReport regime = classify_regime(env);
    const int p = config.precision;

    json doc;
    switch (regime.regime) {
        case BathRegime::classical_high_t: doc["regime"] = "classical_high_T"; break;
        case BathRegime::quantum_low_t: doc["regime"] = "quantum_low_T"; break;
        case BathRegime::crossover: doc["regime"] = "crossover"; break;
    }
    doc["tau_c"] = json::parse(format_number(regime.tau_c, p));
    if (regime.tau_beta)
        doc["tau_beta"] = json::parse(format_number(*regime.tau_beta, p));
    else
        doc["tau_beta"] = nullptr;
    doc["t_dec_estimate"] = json::parse(format_number(regime.t_dec_estimate, p));
    doc["order_of_magnitude_only"] = regime.order_of_magnitude_only;
    doc["t"] = json::parse(format_number(config.time, p));
    doc["target_coherence"] = json::parse(format_number(config.target_coherence, p));

    PlannerOptions options;
    options.n_limit = config.n_limit;
    try {
        const long cycles = min_cycles_for_target(env, config.time, config.target_coherence,
                                                  config.quadrature, options);
        const double delta_t = config.time / (2.0 * static_cast<double>(cycles));
        const PulseSequence seq{cycles, delta_t, 0.0};
        const double achieved = std::exp(-gamma_pulsed(env, seq, config.quadrature).gamma_total);
        doc["minimal_cycles"] = cycles;
        doc["delta_t"] = json::parse(format_number(delta_t, p));
        doc["omega_c_delta_t"] = json::parse(format_number(env.omega_c * delta_t, p));
        doc["achieved_coherence"] = json::parse(format_number(achieved, p));
        out << doc.dump(2) << "\n";
        return kExitOk;
    } catch (const PlanInfeasibleError& infeasible) {
        doc["error"] = infeasible.what();
        doc["n_limit"] = config.n_limit;
        doc["best_coherence"] = json::parse(format_number(infeasible.best_coherence, p));
        doc["best_cycles"] = infeasible.best_cycles;
        out << doc.dump(2) << "\n";
        return kExitPlanInfeasible;
    }
}

namespace {

struct VerifyCheck {
    std::string name;
    double delta = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

class VerifySuite {
  public:
    explicit VerifySuite(std::ostream& report) : report_(report) {}

    void check(const std::string& name, double delta, double tolerance) {
        VerifyCheck entry{name, delta, tolerance, delta <= tolerance, {}};
        print(entry);
        all_pass_ &= entry.pass;
    }

    void fail(const std::string& name, const std::string& note) {
        VerifyCheck entry{name, 0.0, 0.0, false, note};
        print(entry);
        all_pass_ = false;
    }

    bool all_pass() const { return all_pass_; }

  private:
    void print(const VerifyCheck& entry) {
        report_ << (entry.pass ? "PASS " : "FAIL ") << entry.name;
        if (entry.note.empty())
            report_ << " (delta=" << format_number(entry.delta, 3)
                    << ", tol=" << format_number(entry.tolerance, 3) << ")";
        else
            report_ << " (" << entry.note << ")";
        report_ << "\n";
    }

    std::ostream& report_;
    bool all_pass_ = true;
};

double rel_delta(double a, double b) {
    const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    return std::fabs(a - b) / scale;
}

}  // namespace

int run_verify(const ExperimentConfig& config, std::ostream& report) {
    VerifySuite suite(report);
    const long mode_count = config.fast ? std::min<long>(config.mode_count, 500) : config.mode_count;
    const int cutoff = config.fast ? std::min(config.fock_cutoff, 25) : config.fock_cutoff;
    const QuadratureConfig quadrature = config.quadrature;

    const EnvironmentSpec high_t = EnvironmentSpec::ohmic_ratio(0.25, 1.0, 1e-2);
    const EnvironmentSpec low_t = EnvironmentSpec::ohmic_ratio(0.25, 1.0, 1e2);

    // Mode-sum vs continuum quadrature.
    for (const auto& [label, env] : {std::pair{"high_T", high_t}, std::pair{"low_T", low_t}}) {
        const ModeGrid grid = ModeGrid::uniform(env, 30.0 * env.omega_c, static_cast<std::size_t>(mode_count));
        const double t = 1.0;
        const double quad = gamma_unperturbed(env, t, quadrature).gamma_total;
        const double discrete = mode_sum_gamma(grid, env.temperature, t);
        suite.check(std::string("mode_sum_vs_quadrature_free_") + label, rel_delta(quad, discrete), 1e-3);
        for (long n : {1L, 20L}) {
            const PulseSequence seq{n, t / (2.0 * static_cast<double>(n)), 0.0};
            const double quad_p = gamma_pulsed(env, seq, quadrature).gamma_total;
            const double discrete_p = mode_sum_gamma(grid, env.temperature, seq);
            suite.check(std::string("mode_sum_vs_quadrature_pulsed_") + label + "_N" + std::to_string(n),
                        rel_delta(quad_p, discrete_p), 1e-3);
        }
    }

    // Fock-space evolution vs the analytic mode sum, one and two modes.
    try {
        const double g = config.fock_coupling;
        for (const double temperature : {0.0, 0.5}) {
            FockBath bath;
            bath.temperature = temperature;
            bath.modes = {FockMode{1.0, {g, 0.0}, cutoff}};
            ModeGrid grid;
            grid.modes = {BathMode{1.0, g * g}};
            const std::string suffix = temperature == 0.0 ? "_T0" : "_Tw2";

            const double t = 2.3;
            const FockEvolution free_run = fock_evolve(bath, t);
            const double gamma_fock = -std::log(std::abs(free_run.coherence) / 0.5);
            suite.check("fock_vs_analytic_free_1mode" + suffix,
                        std::fabs(gamma_fock - mode_sum_gamma(grid, temperature, t)), 1e-6);

            const PulseSequence cycle{1, 1.1, 0.0};
            const FockEvolution pulsed_run = fock_evolve(bath, cycle);
            const double gamma_fock_p = -std::log(std::abs(pulsed_run.coherence) / 0.5);
            suite.check("fock_vs_analytic_cycle_1mode" + suffix,
                        std::fabs(gamma_fock_p - mode_sum_gamma(grid, temperature, cycle)), 1e-6);

            suite.check("fock_trace_preserved_1mode" + suffix, pulsed_run.trace_error, 1e-10);
            suite.check("fock_populations_constant_1mode" + suffix, pulsed_run.population_drift, 1e-10);
            suite.check("fock_hermiticity_1mode" + suffix, pulsed_run.hermiticity_error, 1e-10);

            // Coupling-phase invariance of |rho_01|.
            FockBath rotated = bath;
            rotated.modes[0].g = std::polar(g, 1.234);
            const FockEvolution rotated_run = fock_evolve(rotated, cycle);
            suite.check("fock_phase_invariance_1mode" + suffix,
                        std::fabs(std::abs(rotated_run.coherence) - std::abs(pulsed_run.coherence)), 1e-10);

            FockBath pair;
            pair.temperature = temperature;
            const int cut2 = std::min(cutoff, 20);
            const int cut3 = std::min(cutoff, 16);
            pair.modes = {FockMode{1.0, {g, 0.0}, cut2}, FockMode{2.2, {0.0, 0.75 * g}, cut3}};
            ModeGrid grid2;
            grid2.modes = {BathMode{1.0, g * g}, BathMode{2.2, 0.5625 * g * g}};
            const FockEvolution pair_run = fock_evolve(pair, cycle);
            const double gamma_pair = -std::log(std::abs(pair_run.coherence) / 0.5);
            suite.check("fock_vs_analytic_cycle_2mode" + suffix,
                        std::fabs(gamma_pair - mode_sum_gamma(grid2, temperature, cycle)), 1e-6);
        }
    } catch (const FockTruncationError& error) {
        suite.fail("fock_cutoff_adequacy", error.what());
    }

    // Heisenberg single-cycle route vs the mode-sum route.
    {
        ModeGrid grid;
        grid.modes = {BathMode{0.7, 0.01}, BathMode{1.3, 0.02}, BathMode{2.9, 0.005}};
        const double delta_t = 0.4;
        const double heisenberg = heisenberg_cycle_coherence(grid, 0.5, delta_t);
        const double direct = std::exp(-mode_sum_gamma(grid, 0.5, PulseSequence{1, delta_t, 0.0}));
        suite.check("heisenberg_vs_mode_sum_N1", rel_delta(heisenberg, direct), 1e-12);
    }

    return suite.all_pass() ? kExitOk : kExitVerifyFailed;
}

int run_task(const ExperimentConfig& config, std::ostream& out, std::ostream& diag) {
    switch (config.task) {
        case TaskKind::curve: return run_curve(config, out, diag);
        case TaskKind::pulse_scan: return run_pulse_scan(config, out, diag);
        case TaskKind::verify: return run_verify(config, out);
        case TaskKind::plan: return run_plan(config, out);
    }
    return kExitConfigError;
}

}  // namespace dephase
